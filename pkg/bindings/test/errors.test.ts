// Error-code mapping: every CLI data-error code surfaces as its own typed
// exception class carrying the same code and message.

import { spawnSync } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { beforeAll, describe, expect, it } from "vitest";

import {
  DuplicateTermError,
  ERROR_CLASSES,
  IoError,
  MalformedLineError,
  UnknownLabelError,
  VadkitClient,
  VadkitDataError,
  VadkitUsageError,
  dataErrorFromStderr,
} from "../src/index.js";

const PYTHON = process.env.VADKIT_PYTHON ?? "python3";
const client = new VadkitClient();
let work: string;

beforeAll(() => {
  work = mkdtempSync(join(tmpdir(), "vadkit-errors-"));
});

function cliStderr(...args: string[]): { status: number | null; stderr: string } {
  const proc = spawnSync(PYTHON, ["-m", "vadkit", ...args], { encoding: "utf-8" });
  return { status: proc.status, stderr: proc.stderr };
}

describe("data errors", () => {
  it("malformed lexicon raises MalformedLineError with the CLI's code", () => {
    const bad = join(work, "bad.tsv");
    writeFileSync(bad, "happy\t0.9\t0.7\n");
    let caught: unknown;
    try {
      client.buildSpace({ lexicon: bad });
    } catch (error) {
      caught = error;
    }
    expect(caught).toBeInstanceOf(MalformedLineError);
    const typed = caught as MalformedLineError;
    expect(typed.code).toBe("malformed-line");
    expect(typed.message).toContain("line 1");

    const direct = cliStderr("build-space", "--lexicon", bad);
    expect(direct.status).toBe(2);
    expect(direct.stderr).toContain(`error[${typed.code}]`);
  });

  it("duplicate lexicon terms raise DuplicateTermError", () => {
    const bad = join(work, "dup.tsv");
    writeFileSync(bad, "happy\t0.9\t0.7\t0.8\nhappy\t0.9\t0.7\t0.8\n");
    expect(() => client.buildSpace({ lexicon: bad })).toThrowError(DuplicateTermError);
  });

  it("unknown manifest labels raise UnknownLabelError", () => {
    const bad = join(work, "bad.jsonl");
    writeFileSync(bad, '{"sample_id": "a", "discrete": "bored"}\n');
    expect(() => client.summarize({ manifest: bad })).toThrowError(UnknownLabelError);
  });

  it("missing files raise IoError", () => {
    expect(() => client.summarize({ manifest: "/does/not/exist.jsonl" }))
      .toThrowError(IoError);
  });

  it("preserves the CLI message verbatim", () => {
    const bad = join(work, "range.tsv");
    writeFileSync(bad, "happy\t1.7\t0.7\t0.8\n");
    const { stderr } = cliStderr("build-space", "--lexicon", bad);
    const match = /^vadkit: error\[([a-z-]+)\]: (.*)$/m.exec(stderr);
    expect(match).not.toBeNull();
    let caught: VadkitDataError | undefined;
    try {
      client.buildSpace({ lexicon: bad });
    } catch (error) {
      caught = error as VadkitDataError;
    }
    expect(caught?.code).toBe(match?.[1]);
    expect(caught?.message).toBe(match?.[2]);
  });
});

describe("usage errors", () => {
  it("bad subcommands raise VadkitUsageError", () => {
    expect(() => client.run(["no-such-command"])).toThrowError(VadkitUsageError);
  });

  it("bad ratios raise VadkitUsageError", () => {
    expect(() =>
      client.split({
        manifest: join(work, "unused.jsonl"),
        ratios: [0.5, 0.3, 0.3],
      }),
    ).toThrowError(VadkitUsageError);
  });
});

describe("code registry", () => {
  it("maps every code to a class carrying that exact code", () => {
    for (const [code, ctor] of Object.entries(ERROR_CLASSES)) {
      const error = new ctor("boom");
      expect(error.code).toBe(code);
      expect(error).toBeInstanceOf(VadkitDataError);
    }
  });

  it("parses diagnostics into the registered class", () => {
    const error = dataErrorFromStderr(
      "vadkit: error[duplicate-sample-id]: line 3: duplicate sample_id 'a'",
    );
    expect(error.code).toBe("duplicate-sample-id");
    expect(error.message).toBe("line 3: duplicate sample_id 'a'");
  });

  it("keeps unknown codes on the base class", () => {
    const error = dataErrorFromStderr("vadkit: error[future-code]: something new");
    expect(error).toBeInstanceOf(VadkitDataError);
    expect(error.code).toBe("future-code");
  });
});
