import { ApiClient } from "./api.js";
import { ConsoleController } from "./controller.js";
import { intentFormHtml, readForm, validateIntentForm } from "./form.js";
import { renderConsole } from "./render.js";

/** Browser bootstrap: mount the console against a live session. */
export function mountConsole(root: HTMLElement, baseUrl: string): ConsoleController {
  const api = new ApiClient(baseUrl);
  const controller = new ConsoleController(api);

  const view = document.createElement("div");
  const formHost = document.createElement("div");
  root.replaceChildren(view, formHost);
  formHost.innerHTML = intentFormHtml();

  const repaint = () => renderConsole(view, controller.vm);

  formHost.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const action = target.getAttribute("data-action");
    if (!action) {
      return;
    }
    const form = formHost.querySelector("form") as HTMLFormElement;
    const result = validateIntentForm(readForm(form));
    if (!result.ok) {
      formHost.innerHTML = intentFormHtml(result.errors); // inline validation
      return;
    }
    const run = action === "preview" ? controller.preview(result.intent!) : controller.commit(result.intent!);
    void run.then(repaint);
  });

  void controller
    .refreshStatic()
    .then(() => controller.pollOnce())
    .then(repaint)
    .catch(repaint);
  if (!startFrameStream(baseUrl, controller, repaint)) {
    controller.startPolling(repaint);
  } else {
    // the push stream carries frames; events and rows refresh at a slow poll
    controller.startPolling(repaint);
  }
  return controller;
}

/** Prefer the server-push stream when the runtime has EventSource; on
 * error the stream is reopened with the last seen sequence number so the
 * charts resume without gaps or duplicates. */
function startFrameStream(baseUrl: string, controller: ConsoleController, repaint: () => void): boolean {
  const EventSourceCtor = (globalThis as { EventSource?: typeof EventSource }).EventSource;
  if (!EventSourceCtor) {
    return false;
  }
  const open = () => {
    const source = new EventSourceCtor(`${baseUrl}/stream?since=${controller.vm.latestFrameSeq}`);
    source.onmessage = (event: MessageEvent<string>) => {
      controller.vm.applyFrame(JSON.parse(event.data));
      controller.vm.setStale(false);
      repaint();
    };
    source.onerror = () => {
      source.close();
      controller.vm.setStale(true);
      repaint();
      setTimeout(open, 1000);
    };
  };
  open();
  return true;
}

declare global {
  interface Window {
    mountConsole?: typeof mountConsole;
  }
}

if (typeof window !== "undefined") {
  window.mountConsole = mountConsole;
  const root = document.getElementById("console-root");
  if (root) {
    const base = new URLSearchParams(window.location.search).get("api") ?? "";
    mountConsole(root, base);
  }
}
