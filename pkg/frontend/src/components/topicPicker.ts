// Topic autocomplete backed by GET /topics; shows clause counts next to
// each suggestion.

import type { ApiClient, Topic } from "../api.js";

export interface TopicPickerHooks {
  onSelect(topic: string): void;
  onError(message: string): void;
}

export function createTopicPicker(
  api: ApiClient,
  hooks: TopicPickerHooks,
): HTMLElement {
  const root = document.createElement("div");
  root.className = "topic-picker";

  const input = document.createElement("input");
  input.type = "search";
  input.placeholder = "Search topics…";
  input.setAttribute("aria-label", "topic search");

  const list = document.createElement("ul");
  list.className = "suggestions";

  const render = (topics: Topic[]) => {
    list.replaceChildren();
    if (topics.length === 0) {
      const empty = document.createElement("li");
      empty.className = "empty";
      empty.textContent = "No matching topics";
      list.append(empty);
      return;
    }
    for (const topic of topics) {
      const item = document.createElement("li");
      const button = document.createElement("button");
      button.type = "button";
      button.dataset.topic = topic.label;
      button.textContent = `${topic.label} (${topic.clause_count})`;
      button.addEventListener("click", () => {
        input.value = topic.label;
        list.replaceChildren();
        hooks.onSelect(topic.label);
      });
      item.append(button);
      list.append(item);
    }
  };

  let pending = 0;
  const refresh = async () => {
    const ticket = ++pending;
    try {
      const { topics } = await api.topics(input.value.trim());
      if (ticket === pending) render(topics);
    } catch (e) {
      hooks.onError(e instanceof Error ? e.message : String(e));
    }
  };

  input.addEventListener("input", () => void refresh());
  input.addEventListener("focus", () => void refresh());

  root.append(input, list);
  return root;
}
