import { defineConfig } from "vitest/config";

// Generous timeouts: the e2e suite spawns the Python engine server and plays
// full hint games against it.
export default defineConfig({
  test: {
    environment: "node",
    testTimeout: 120_000,
    hookTimeout: 30_000,
  },
});
