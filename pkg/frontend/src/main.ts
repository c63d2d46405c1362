/** Bootstrap: document picker + annotator name, then the annotation app. */

import { ApiClient } from "./api.js";
import { App } from "./ui.js";

const client = new ApiClient();

async function boot(): Promise<void> {
  const picker = document.getElementById("picker")!;
  const appRoot = document.getElementById("app")!;
  const app = new App(appRoot as HTMLElement, client);

  const listing = await client.documents();
  const select = document.createElement("select");
  select.id = "doc-select";
  for (const doc of listing.documents) {
    const option = document.createElement("option");
    option.value = doc.doc_id;
    option.textContent = `${doc.doc_id} — ${doc.genre} (${doc.n_propositions} units)`;
    select.append(option);
  }
  const name = document.createElement("input");
  name.id = "annotator-input";
  name.placeholder = "annotator name";
  name.value = localStorage.getItem("annotator") ?? "";
  const open = document.createElement("button");
  open.textContent = "Open";
  open.addEventListener("click", () => {
    const annotator = name.value.trim();
    if (!annotator) {
      alert("Enter an annotator name first.");
      return;
    }
    localStorage.setItem("annotator", annotator);
    void app.load(select.value, annotator);
  });
  picker.append(select, name, open);

  const params = new URLSearchParams(window.location.search);
  const doc = params.get("doc");
  const annotator = params.get("annotator");
  if (doc && annotator) {
    select.value = doc;
    name.value = annotator;
    await app.load(doc, annotator);
  }
}

void boot();
