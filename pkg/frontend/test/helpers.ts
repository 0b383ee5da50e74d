import { readFileSync } from "node:fs";
import { resolve } from "node:path";

import { ServerMessage } from "../src/protocol.js";

export interface WalkthroughFixture {
  segments: number;
  steps: { note: string; frames: ServerMessage[] }[];
}

/** vitest runs with the frontend directory as cwd. */
export function loadJson<T>(relativePath: string): T {
  return JSON.parse(readFileSync(resolve(process.cwd(), relativePath), "utf-8")) as T;
}

export function loadWalkthrough(): WalkthroughFixture {
  return loadJson<WalkthroughFixture>("test/fixtures/walkthrough.json");
}
