import { defineConfig } from "vitest/config";

// every test spawns the CLI at least once; allow for interpreter startup
export default defineConfig({
  test: {
    testTimeout: 60_000,
    hookTimeout: 60_000,
  },
});
