import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "node",
    include: ["test/**/*.test.ts"],
    // The round-trip suite shells out to the Python toolkit several times.
    testTimeout: 120_000,
  },
});
