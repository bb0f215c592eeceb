// Client-side session state: selected topic, editable keyword chips, the
// latest candidates, and an append-only history of (plan, clause) snapshots.

import type { Candidate, PlanStage } from "./api.js";

export type ChipOrigin = "custom" | "walk";

export interface Chip {
  text: string;
  origin: ChipOrigin;
  pinned: boolean;
}

export interface Snapshot {
  plan: string[];
  clause: string;
  seed: number;
}

export class SessionState {
  topic = "";
  chips: Chip[] = [];
  candidates: Candidate[] = [];
  seed: number | null = null; // null = explore (server picks a seed)
  private readonly snapshots: Snapshot[] = [];

  get history(): readonly Snapshot[] {
    return this.snapshots;
  }

  selectTopic(topic: string): void {
    if (topic !== this.topic) {
      this.topic = topic;
      this.chips = [];
      this.candidates = [];
    }
  }

  /** Add a user-entered chip; duplicates (by text) are ignored. */
  addCustomChip(text: string): boolean {
    const trimmed = text.trim().toLowerCase();
    if (!trimmed || this.chips.some((c) => c.text === trimmed)) return false;
    this.chips.push({ text: trimmed, origin: "custom", pinned: true });
    return true;
  }

  removeChip(text: string): void {
    this.chips = this.chips.filter((c) => c.text !== text);
  }

  togglePin(text: string): void {
    const chip = this.chips.find((c) => c.text === text);
    if (chip) chip.pinned = !chip.pinned;
  }

  /** Keywords re-sent as custom_keywords on regenerate: every pinned chip
   * plus any surviving custom chip. */
  customKeywords(): string[] {
    return this.chips
      .filter((c) => c.pinned || c.origin === "custom")
      .map((c) => c.text);
  }

  /** Replace chips with a fresh server plan, preserving pins: a pinned chip
   * that reappears in the plan stays pinned. */
  applyPlan(stages: PlanStage[]): void {
    const pinned = new Set(this.chips.filter((c) => c.pinned).map((c) => c.text));
    this.chips = stages.map((s) => ({
      text: s.keyword,
      origin: s.source,
      pinned: pinned.has(s.keyword) || s.source === "custom",
    }));
  }

  planKeywords(): string[] {
    return this.chips.map((c) => c.text);
  }

  recordGeneration(candidates: Candidate[], seed: number): void {
    this.candidates = candidates;
    this.snapshots.push({
      plan: this.planKeywords(),
      clause: candidates[0]?.text ?? "",
      seed,
    });
  }
}
