// Editable keyword chips plus the regenerate action. Walk-derived and
// custom chips are visually distinct; pinned chips are re-sent as custom
// keywords on every regeneration.

import type { SessionState } from "../state.js";

export interface PlanEditorHooks {
  onRegenerate(): void;
}

export function createPlanEditor(
  state: SessionState,
  hooks: PlanEditorHooks,
): { root: HTMLElement; render: () => void; setBusy: (busy: boolean) => void } {
  const root = document.createElement("section");
  root.className = "plan-editor";

  const chipRow = document.createElement("div");
  chipRow.className = "chips";

  const addInput = document.createElement("input");
  addInput.placeholder = "Add keyword…";
  addInput.setAttribute("aria-label", "add keyword");

  const addButton = document.createElement("button");
  addButton.type = "button";
  addButton.textContent = "Add";

  const regenButton = document.createElement("button");
  regenButton.type = "button";
  regenButton.className = "regenerate";
  regenButton.textContent = "Regenerate";

  const seedInput = document.createElement("input");
  seedInput.type = "number";
  seedInput.placeholder = "seed (blank = explore)";
  seedInput.setAttribute("aria-label", "seed");

  const render = () => {
    chipRow.replaceChildren();
    for (const chip of state.chips) {
      const el = document.createElement("span");
      el.className = `chip ${chip.origin}${chip.pinned ? " pinned" : ""}`;
      el.dataset.keyword = chip.text;

      const label = document.createElement("span");
      label.textContent = chip.text;

      const pin = document.createElement("button");
      pin.type = "button";
      pin.className = "pin";
      pin.title = chip.pinned ? "Unpin" : "Pin (keep on regenerate)";
      pin.textContent = chip.pinned ? "📌" : "📍";
      pin.addEventListener("click", () => {
        state.togglePin(chip.text);
        render();
      });

      const remove = document.createElement("button");
      remove.type = "button";
      remove.className = "remove";
      remove.title = "Remove";
      remove.textContent = "×";
      remove.addEventListener("click", () => {
        state.removeChip(chip.text);
        render();
      });

      el.append(label, pin, remove);
      chipRow.append(el);
    }
  };

  const addChip = () => {
    if (state.addCustomChip(addInput.value)) {
      addInput.value = "";
      render();
    }
  };
  addButton.addEventListener("click", addChip);
  addInput.addEventListener("keydown", (e) => {
    if (e.key === "Enter") addChip();
  });

  seedInput.addEventListener("change", () => {
    state.seed = seedInput.value === "" ? null : Number(seedInput.value);
  });
  regenButton.addEventListener("click", () => hooks.onRegenerate());

  const controls = document.createElement("div");
  controls.className = "controls";
  controls.append(addInput, addButton, seedInput, regenButton);
  root.append(chipRow, controls);

  return {
    root,
    render,
    setBusy(busy: boolean) {
      regenButton.disabled = busy;
      addButton.disabled = busy;
    },
  };
}
