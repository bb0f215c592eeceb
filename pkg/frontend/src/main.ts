// Plan Studio entry point: wires the topic picker, plan editor, and clause
// panel together. One user action maps to at most one service call.

import { ApiClient, ApiError } from "./api.js";
import { createClausePanel } from "./components/clausePanel.js";
import { createPlanEditor } from "./components/planEditor.js";
import { createTopicPicker } from "./components/topicPicker.js";
import { SessionState } from "./state.js";

export function mountApp(root: HTMLElement, api: ApiClient): SessionState {
  const state = new SessionState();

  const banner = document.createElement("div");
  banner.className = "banner hidden";
  const showError = (message: string) => {
    banner.textContent = message;
    banner.classList.remove("hidden");
  };
  const clearError = () => banner.classList.add("hidden");

  const clausePanel = createClausePanel(state);
  const planEditor = createPlanEditor(state, {
    onRegenerate: () => void regenerate(),
  });

  const topicPicker = createTopicPicker(api, {
    onSelect: (topic) => {
      state.selectTopic(topic);
      clearError();
      planEditor.render();
      clausePanel.render();
    },
    onError: showError,
  });

  async function regenerate(): Promise<void> {
    if (!state.topic) {
      showError("Pick a topic first.");
      return;
    }
    planEditor.setBusy(true);
    clearError();
    try {
      const planRes = await api.plan({
        topic: state.topic,
        custom_keywords: state.customKeywords(),
        ...(state.seed !== null ? { seed: state.seed } : {}),
      });
      state.applyPlan(planRes.plan);
      const genRes = await api.generate({
        topic: state.topic,
        plan: state.planKeywords(),
        k: 3,
        seed: planRes.seed,
      });
      state.recordGeneration(genRes.candidates, planRes.seed);
      planEditor.render();
      clausePanel.render();
    } catch (e) {
      // keep chips and history intact on failure
      showError(e instanceof ApiError ? e.message : String(e));
    } finally {
      planEditor.setBusy(false);
    }
  }

  const heading = document.createElement("h1");
  heading.textContent = "Plan Studio";
  root.append(heading, banner, topicPicker, planEditor.root, clausePanel.root);
  planEditor.render();
  clausePanel.render();
  return state;
}

declare global {
  interface Window {
    PLAN_STUDIO_API?: string;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const base = window.PLAN_STUDIO_API ?? "http://127.0.0.1:8080";
  mountApp(document.getElementById("app")!, new ApiClient(base));
}
