/**
 * The card-builder page: enter a URI-M, pick a surrogate type and its
 * options, preview the result, copy the embed code. Every fact shown in
 * the preview pane comes from the API response; this module only moves
 * bytes between the response and the DOM.
 */

import { ServiceError, SurrogateResponse, requestSurrogate } from "./api.js";
import { buildEmbedSnippet, bytesToDataUri } from "./embed.js";
import {
  OptionValues,
  PREFERENCES,
  SURROGATE_TYPES,
  SurrogateType,
  buildPreferHeader,
} from "./preferences.js";
import { UiRequestState, currentOptions, initialState } from "./state.js";

export class CardBuilderApp {
  readonly state: UiRequestState;
  private readonly root: HTMLElement;
  private readonly apiBase: string;
  private inFlight: AbortController | null = null;

  constructor(root: HTMLElement, apiBase: string) {
    this.root = root;
    this.apiBase = apiBase;
    this.state = initialState();
    this.mount();
  }

  private element<T extends HTMLElement>(selector: string): T {
    const found = this.root.querySelector(selector);
    if (!found) {
      throw new Error(`missing UI element ${selector}`);
    }
    return found as T;
  }

  private mount(): void {
    this.root.innerHTML = `
      <form id="surrogate-form">
        <label for="urim">Memento URI (URI-M)</label>
        <input id="urim" name="urim" type="text" placeholder="https://archive.example/web/20110211072257/http://site.example/" spellcheck="false">
        <label for="surrogate-type">Surrogate</label>
        <select id="surrogate-type" name="surrogate-type"></select>
        <fieldset id="options"><legend>Options</legend></fieldset>
        <button id="submit-button" type="submit">Generate</button>
        <span id="status" data-status="idle"></span>
      </form>
      <div id="result">
        <div id="preview-pane">
          <h2>Preview</h2>
          <div id="preview"></div>
        </div>
        <div id="embed-pane">
          <h2>Embed code</h2>
          <p id="applied"></p>
          <textarea id="embed-code" readonly spellcheck="false"></textarea>
          <button id="copy-button" type="button" disabled>Copy embed code</button>
          <span id="copy-confirmation"></span>
        </div>
      </div>
    `;
    const select = this.element<HTMLSelectElement>("#surrogate-type");
    for (const type of SURROGATE_TYPES) {
      const option = document.createElement("option");
      option.value = type;
      option.textContent = type;
      select.appendChild(option);
    }
    select.value = this.state.surrogateType;
    select.addEventListener("change", () => {
      this.state.surrogateType = select.value as SurrogateType;
      this.renderOptions();
    });
    this.element<HTMLInputElement>("#urim").addEventListener("input", (event) => {
      this.state.urim = (event.target as HTMLInputElement).value.trim();
    });
    this.element<HTMLFormElement>("#surrogate-form").addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submit();
    });
    this.element<HTMLButtonElement>("#copy-button").addEventListener("click", () => {
      void this.copyEmbedCode();
    });
    this.renderOptions();
  }

  renderOptions(): void {
    const fieldset = this.element<HTMLFieldSetElement>("#options");
    fieldset.innerHTML = "<legend>Options</legend>";
    const values = currentOptions(this.state);
    for (const spec of PREFERENCES[this.state.surrogateType]) {
      const row = document.createElement("div");
      row.className = "option-row";
      const label = document.createElement("label");
      label.htmlFor = `pref-${spec.name}`;
      label.textContent = `${spec.name} (${spec.description})`;
      let control: HTMLInputElement;
      if (spec.kind === "yesno") {
        control = document.createElement("input");
        control.type = "checkbox";
        control.checked = values[spec.name] === "yes";
        control.addEventListener("change", () => {
          values[spec.name] = control.checked ? "yes" : "no";
        });
      } else if (spec.kind === "int") {
        control = document.createElement("input");
        control.type = "number";
        control.min = "1";
        if (spec.max !== undefined) {
          control.max = String(spec.max);
        }
        control.value = values[spec.name];
        control.addEventListener("input", () => {
          values[spec.name] = control.value;
        });
      } else {
        control = document.createElement("input");
        control.type = "text";
        control.value = values[spec.name];
        control.addEventListener("input", () => {
          values[spec.name] = control.value;
        });
      }
      control.id = `pref-${spec.name}`;
      control.dataset.pref = spec.name;
      row.appendChild(label);
      row.appendChild(control);
      fieldset.appendChild(row);
    }
  }

  /** Names of every preference control currently in the form. */
  formPreferenceNames(): string[] {
    return Array.from(this.root.querySelectorAll<HTMLElement>("#options [data-pref]")).map(
      (node) => node.dataset.pref as string,
    );
  }

  preferHeaderForSubmit(): string {
    return buildPreferHeader(this.state.surrogateType, currentOptions(this.state));
  }

  async submit(): Promise<void> {
    if (!this.state.urim) {
      this.setStatus("error", "enter a URI-M first");
      return;
    }
    this.inFlight?.abort();
    const controller = new AbortController();
    this.inFlight = controller;
    this.setStatus("loading", "generating...");
    try {
      const response = await requestSurrogate(
        this.apiBase,
        this.state.surrogateType,
        this.state.urim,
        this.preferHeaderForSubmit(),
        controller.signal,
      );
      if (controller !== this.inFlight) {
        return; // a newer submission superseded this one
      }
      const embedSnippet = buildEmbedSnippet(this.state.surrogateType, this.state.urim, response);
      this.state.lastResponse = {
        response,
        embedSnippet,
        urim: this.state.urim,
        surrogateType: this.state.surrogateType,
      };
      this.renderResult(response, embedSnippet);
      this.setStatus("ready", "");
    } catch (error) {
      if (controller !== this.inFlight || (error instanceof DOMException && error.name === "AbortError")) {
        return;
      }
      const message =
        error instanceof ServiceError
          ? error.message
          : `request failed: ${(error as Error).message}`;
      this.setStatus("error", message);
    }
  }

  private renderResult(response: SurrogateResponse, embedSnippet: string): void {
    const preview = this.element<HTMLDivElement>("#preview");
    preview.innerHTML = "";
    if (response.contentType.startsWith("text/html") && response.text !== undefined) {
      preview.innerHTML = response.text;
    } else if (response.text !== undefined) {
      const pre = document.createElement("pre");
      pre.textContent = response.text;
      preview.appendChild(pre);
    } else if (response.bytes !== undefined) {
      const img = document.createElement("img");
      img.src = bytesToDataUri(
        response.bytes,
        response.contentType.split(";")[0].trim() || "application/octet-stream",
      );
      img.alt = `${this.state.surrogateType} preview`;
      preview.appendChild(img);
    }
    this.element<HTMLParagraphElement>("#applied").textContent = response.preferenceApplied
      ? `Preferences applied: ${response.preferenceApplied}`
      : "";
    const embedBox = this.element<HTMLTextAreaElement>("#embed-code");
    embedBox.value = embedSnippet;
    this.element<HTMLButtonElement>("#copy-button").disabled = false;
    this.element<HTMLSpanElement>("#copy-confirmation").textContent = "";
  }

  private setStatus(status: UiRequestState["status"], message: string): void {
    this.state.status = status;
    this.state.errorMessage = status === "error" ? message : undefined;
    const node = this.element<HTMLSpanElement>("#status");
    node.dataset.status = status;
    node.textContent = message;
  }

  async copyEmbedCode(): Promise<void> {
    const snippet = this.state.lastResponse?.embedSnippet;
    if (!snippet) {
      return;
    }
    const confirmation = this.element<HTMLSpanElement>("#copy-confirmation");
    try {
      await navigator.clipboard.writeText(snippet);
      confirmation.textContent = "Copied.";
    } catch {
      // no clipboard permission: select the code so a manual copy works
      const embedBox = this.element<HTMLTextAreaElement>("#embed-code");
      embedBox.focus();
      embedBox.select();
      confirmation.textContent = "Clipboard unavailable: code selected, copy manually.";
    }
  }
}
