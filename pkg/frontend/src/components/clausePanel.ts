// Candidate clause cards plus the iteration history with word-level diffs
// between consecutive snapshots.

import { diffWords, isUnchanged } from "../diff.js";
import type { SessionState } from "../state.js";

export function createClausePanel(state: SessionState): {
  root: HTMLElement;
  render: () => void;
} {
  const root = document.createElement("section");
  root.className = "clause-panel";

  const candidates = document.createElement("div");
  candidates.className = "candidates";

  const historyList = document.createElement("ol");
  historyList.className = "history";

  const renderCandidates = () => {
    candidates.replaceChildren();
    if (state.candidates.length === 0) {
      const hint = document.createElement("p");
      hint.className = "empty";
      hint.textContent =
        "No candidates — try removing keywords or broadening the plan.";
      candidates.append(hint);
      return;
    }
    for (const cand of state.candidates) {
      const card = document.createElement("article");
      card.className = "candidate";
      card.dataset.clauseId = cand.clause_id;

      const text = document.createElement("p");
      text.className = "clause-text";
      text.textContent = cand.text;

      const meta = document.createElement("footer");
      meta.textContent = `score ${cand.score.toFixed(4)} · ${cand.clause_id}`;

      const copy = document.createElement("button");
      copy.type = "button";
      copy.textContent = "Copy";
      copy.addEventListener("click", () => {
        void navigator.clipboard?.writeText(cand.text);
      });

      card.append(text, meta, copy);
      candidates.append(card);
    }
  };

  const renderHistory = () => {
    historyList.replaceChildren();
    state.history.forEach((snap, i) => {
      const item = document.createElement("li");
      item.className = "snapshot";

      const plan = document.createElement("code");
      plan.textContent = `[${snap.plan.join(", ")}] seed=${snap.seed}`;
      item.append(plan);

      const clause = document.createElement("p");
      if (i === 0) {
        clause.textContent = snap.clause;
      } else {
        const segments = diffWords(state.history[i - 1].clause, snap.clause);
        if (isUnchanged(segments)) {
          clause.textContent = snap.clause;
          const badge = document.createElement("em");
          badge.className = "unchanged";
          badge.textContent = " (unchanged)";
          clause.append(badge);
        } else {
          for (const seg of segments) {
            const span = document.createElement("span");
            span.className = `diff-${seg.op}`;
            span.textContent = `${seg.text} `;
            clause.append(span);
          }
        }
      }
      item.append(clause);
      historyList.append(item);
    });
  };

  root.append(candidates, historyList);
  return {
    root,
    render() {
      renderCandidates();
      renderHistory();
    },
  };
}
