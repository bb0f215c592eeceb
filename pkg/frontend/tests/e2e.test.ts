// End-to-end: build toy artifacts with the CLI, start the HTTP service, and
// drive it through the same client the UI uses.

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, type FetchLike } from "../src/api.js";
import { diffWords, isUnchanged } from "../src/diff.js";
import { SessionState } from "../src/state.js";

const TOPICS: Record<string, string[]> = {
  severability: [
    "In case any provision herein shall be invalid, illegal, or unenforceable, the validity of the remaining provisions shall not be affected.",
    "If any provision of this agreement is held invalid, the remainder shall continue in full force; any unenforceable provision shall be reformed.",
    "Any provision found unenforceable shall be severed. The remaining provisions remain valid and enforceable.",
    "Should any provision be declared invalid by a court, such invalidity shall not impair the other provisions.",
  ],
  "data privacy": [
    "The grantee consents to the collection, use and transfer of personal data for the purpose of administering and managing participation in the plan.",
    "Personal data shall be transferred only with consent; the company shall manage such data under the plan.",
    "The company collects personal data to administer the plan. Transfer of data requires explicit consent.",
    "Participation requires consent to the transfer of personal data by the company administering the plan.",
  ],
  brokers: [
    "No broker, finder or investment banker is entitled to any brokerage or finder fee in connection with the transactions contemplated by this agreement.",
    "Each party represents that no broker is entitled to a commission in connection with the contemplated transaction.",
    "No brokerage fee or commission shall be payable to any finder in connection with this agreement.",
    "The company has not engaged any broker or finder entitled to any fee or commission in connection with the transactions.",
  ],
};

const PORT = 8917;
const BASE = `http://127.0.0.1:${PORT}`;

let workDir: string;
let server: ChildProcess;

function buildArtifacts(dir: string): void {
  const train = join(dir, "train.jsonl");
  const lines: string[] = [];
  let i = 0;
  for (const [topic, texts] of Object.entries(TOPICS)) {
    for (const text of texts) {
      lines.push(
        JSON.stringify({ clause_id: `k${i}#0`, contract_id: `k${i}`, topic, text }),
      );
      i += 1;
    }
  }
  writeFileSync(train, lines.join("\n") + "\n");
  const cli = (...args: string[]) => execFileSync("clauseplan", args, { cwd: dir });
  cli("keywords", "--input", train, "--out", join(dir, "keywords.json"),
    "--per-topic", "50", "--min-topic-freq", "1");
  cli("plans", "--input", train, "--keywords", join(dir, "keywords.json"),
    "--out", join(dir, "plans.jsonl"));
  cli("graph", "--input", join(dir, "plans.jsonl"), "--out", join(dir, "graph.json"));
  cli("index", "--input", train, "--out", join(dir, "index.json"));
}

async function waitForHealth(client: ApiClient): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      const res = await client.health();
      if (res.status === "ok") return;
    } catch {
      await new Promise((r) => setTimeout(r, 150));
    }
  }
  throw new Error("service did not become healthy");
}

const nodeFetch: FetchLike = (input, init) => fetch(input, init);

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), "plan-studio-e2e-"));
  buildArtifacts(workDir);
  server = spawn("clauseplan", [
    "serve",
    "--graph", join(workDir, "graph.json"),
    "--index", join(workDir, "index.json"),
    "--keywords", join(workDir, "keywords.json"),
    "--port", String(PORT),
  ], { stdio: "ignore" });
  await waitForHealth(new ApiClient(BASE, nodeFetch));
}, 60_000);

afterAll(() => {
  server?.kill("SIGTERM");
  rmSync(workDir, { recursive: true, force: true });
});

describe("Plan Studio against a live service", () => {
  it("topic autocomplete returns the fixture topics", async () => {
    const client = new ApiClient(BASE, nodeFetch);
    const { topics } = await client.topics("data");
    expect(topics.map((t) => t.label)).toContain("data privacy");
    expect(topics[0].clause_count).toBe(4);

    const all = await client.topics("");
    expect(all.topics.map((t) => t.label).sort()).toEqual([
      "brokers", "data privacy", "severability",
    ]);
  });

  it("regenerating with an added custom keyword sends it and gets it back", async () => {
    const bodies: unknown[] = [];
    const recording: FetchLike = (input, init) => {
      if (init?.body) bodies.push(JSON.parse(String(init.body)));
      return fetch(input, init);
    };
    const client = new ApiClient(BASE, recording);

    const state = new SessionState();
    state.selectTopic("data privacy");
    state.addCustomChip("personal");

    const planRes = await client.plan({
      topic: state.topic,
      custom_keywords: state.customKeywords(),
      thresholds: Array(10).fill(50),
      seed: 1,
    });
    expect(bodies[0]).toMatchObject({ custom_keywords: ["personal"] });
    state.applyPlan(planRes.plan);
    const chip = state.chips.find((c) => c.text === "personal");
    expect(chip?.origin).toBe("custom");
  });

  it("pinned-seed regeneration renders an identical clause", async () => {
    const client = new ApiClient(BASE, nodeFetch);
    const state = new SessionState();
    state.selectTopic("severability");
    state.seed = 42;

    for (let round = 0; round < 2; round++) {
      const planRes = await client.plan({
        topic: state.topic,
        custom_keywords: state.customKeywords(),
        seed: state.seed!,
      });
      state.applyPlan(planRes.plan);
      const genRes = await client.generate({
        topic: state.topic,
        plan: state.planKeywords(),
        k: 3,
        seed: planRes.seed,
      });
      state.recordGeneration(genRes.candidates, planRes.seed);
    }

    expect(state.history).toHaveLength(2);
    expect(state.history[1].clause).toBe(state.history[0].clause);

    const diff = diffWords(state.history[0].clause, state.history[1].clause);
    expect(isUnchanged(diff)).toBe(true);
  });

  it("self-retrieval plan generates the expected clause", async () => {
    const client = new ApiClient(BASE, nodeFetch);
    const res = await client.generate({
      topic: "severability",
      plan: ["provision", "invalid", "unenforceable"],
      k: 1,
    });
    expect(res.candidates).toHaveLength(1);
    expect(res.candidates[0].text).toContain("provision");
  });

  it("unknown topics surface as client errors", async () => {
    const client = new ApiClient(BASE, nodeFetch);
    await expect(
      client.plan({ topic: "no such topic", custom_keywords: [] }),
    ).rejects.toMatchObject({ status: 404 });
  });
});
