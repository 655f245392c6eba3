import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { CardBuilderApp } from "../src/app.js";
import { PREFERENCES, SurrogateType } from "../src/preferences.js";

const API = "http://svc.example";
const URIM = "http://archive.example/web/20110211072257/http://site.example/";

function mountApp(): CardBuilderApp {
  document.body.innerHTML = '<main id="app"></main>';
  return new CardBuilderApp(document.getElementById("app") as HTMLElement, API);
}

function setUrim(app: CardBuilderApp, value: string) {
  const input = document.getElementById("urim") as HTMLInputElement;
  input.value = value;
  input.dispatchEvent(new Event("input", { bubbles: true }));
}

function chooseType(type: SurrogateType) {
  const select = document.getElementById("surrogate-type") as HTMLSelectElement;
  select.value = type;
  select.dispatchEvent(new Event("change", { bubbles: true }));
}

afterEach(() => {
  vi.unstubAllGlobals();
  vi.restoreAllMocks();
});

describe("form construction", () => {
  it("renders one control per table row for every surrogate type", () => {
    const app = mountApp();
    for (const type of Object.keys(PREFERENCES) as SurrogateType[]) {
      chooseType(type);
      const expected = PREFERENCES[type].map((spec) => spec.name).sort();
      expect(app.formPreferenceNames().sort()).toEqual(expected);
    }
  });

  it("copy button is disabled before any response", () => {
    mountApp();
    const button = document.getElementById("copy-button") as HTMLButtonElement;
    expect(button.disabled).toBe(true);
  });
});

describe("thin-client preview", () => {
  it("social card preview and embed pane show exactly the response body", async () => {
    const card = '<blockquote class="surrogate-card"><p>Egypt News</p></blockquote>';
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        new Response(card, { status: 200, headers: { "Content-Type": "text/html" } }),
      ),
    );
    const app = mountApp();
    setUrim(app, URIM);
    await app.submit();
    const preview = document.getElementById("preview") as HTMLDivElement;
    // every rendered fact originates from the API response, verbatim
    expect(preview.innerHTML).toBe(card);
    const embed = document.getElementById("embed-code") as HTMLTextAreaElement;
    expect(embed.value).toBe(card);
    expect(app.state.status).toBe("ready");
  });

  it("binary surrogates preview as images built from the response bytes", async () => {
    const bytes = new Uint8Array([1, 2, 3, 4, 250]);
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        new Response(bytes, {
          status: 200,
          headers: {
            "Content-Type": "image/png",
            "Preference-Applied": "viewport_width=1024,viewport_height=768",
          },
        }),
      ),
    );
    const app = mountApp();
    chooseType("thumbnail");
    setUrim(app, URIM);
    await app.submit();
    const img = document.querySelector("#preview img") as HTMLImageElement;
    const prefix = "data:image/png;base64,";
    expect(img.src.startsWith(prefix)).toBe(true);
    const decoded = atob(img.src.slice(prefix.length));
    expect(Array.from(decoded, (c) => c.charCodeAt(0))).toEqual(Array.from(bytes));
    // applied preference values are surfaced to the user
    const applied = document.getElementById("applied") as HTMLParagraphElement;
    expect(applied.textContent).toContain("viewport_width=1024");
    // the embed snippet is self-contained: data URI, no service-host image URLs
    const embed = (document.getElementById("embed-code") as HTMLTextAreaElement).value;
    expect(embed).toContain("data:image/png;base64,");
    expect(embed).not.toContain(API);
  });

  it("carries the checked remove_banner preference into the request", async () => {
    const fetchMock = vi.fn(async () =>
      new Response(new Uint8Array([9]), {
        status: 200,
        headers: { "Content-Type": "image/png", "Preference-Applied": "remove_banner=yes" },
      }),
    );
    vi.stubGlobal("fetch", fetchMock);
    const app = mountApp();
    chooseType("thumbnail");
    setUrim(app, URIM);
    const checkbox = document.getElementById("pref-remove_banner") as HTMLInputElement;
    checkbox.checked = true;
    checkbox.dispatchEvent(new Event("change", { bubbles: true }));
    await app.submit();
    const options = fetchMock.mock.calls[0][1] as RequestInit;
    expect((options.headers as Record<string, string>)["Prefer"]).toBe("remove_banner=yes");
    expect((document.getElementById("applied") as HTMLElement).textContent).toContain(
      "remove_banner=yes",
    );
  });

  it("shows the mapped explanation for a 400 response", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        new Response(JSON.stringify({ message: "bad" }), {
          status: 400,
          headers: { "Content-Type": "application/json" },
        }),
      ),
    );
    const app = mountApp();
    setUrim(app, "not-a-uri");
    await app.submit();
    expect(app.state.status).toBe("error");
    const status = document.getElementById("status") as HTMLSpanElement;
    expect(status.textContent).toContain("invalid URI");
  });

  it("a newer submission supersedes the in-flight one", async () => {
    let call = 0;
    vi.stubGlobal(
      "fetch",
      vi.fn(async (_url: string, init?: RequestInit) => {
        call += 1;
        if (call === 1) {
          // first request: hang until aborted
          return new Promise<Response>((_resolve, reject) => {
            init?.signal?.addEventListener("abort", () =>
              reject(new DOMException("aborted", "AbortError")),
            );
          });
        }
        return new Response("<p>second</p>", {
          status: 200,
          headers: { "Content-Type": "text/html" },
        });
      }),
    );
    const app = mountApp();
    setUrim(app, URIM);
    const first = app.submit();
    const second = app.submit();
    await Promise.all([first, second]);
    expect((document.getElementById("preview") as HTMLDivElement).innerHTML).toBe(
      "<p>second</p>",
    );
    expect(app.state.status).toBe("ready");
  });
});

describe("copy embed code", () => {
  it("copies the embed pane byte-for-byte", async () => {
    const card = "<blockquote>exact bytes &amp; entities</blockquote>";
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        new Response(card, { status: 200, headers: { "Content-Type": "text/html" } }),
      ),
    );
    const written: string[] = [];
    Object.defineProperty(navigator, "clipboard", {
      configurable: true,
      value: { writeText: async (text: string) => void written.push(text) },
    });
    const app = mountApp();
    setUrim(app, URIM);
    await app.submit();
    await app.copyEmbedCode();
    const pane = document.getElementById("embed-code") as HTMLTextAreaElement;
    expect(written).toEqual([pane.value]);
    expect(written[0]).toBe(card);
    expect(
      (document.getElementById("copy-confirmation") as HTMLSpanElement).textContent,
    ).toBe("Copied.");
  });

  it("falls back to select-all when the clipboard is unavailable", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        new Response("<p>x</p>", { status: 200, headers: { "Content-Type": "text/html" } }),
      ),
    );
    Object.defineProperty(navigator, "clipboard", {
      configurable: true,
      value: {
        writeText: async () => {
          throw new Error("denied");
        },
      },
    });
    const app = mountApp();
    setUrim(app, URIM);
    await app.submit();
    const pane = document.getElementById("embed-code") as HTMLTextAreaElement;
    const selectSpy = vi.spyOn(pane, "select");
    await app.copyEmbedCode();
    expect(selectSpy).toHaveBeenCalled();
    expect(
      (document.getElementById("copy-confirmation") as HTMLSpanElement).textContent,
    ).toContain("Clipboard unavailable");
  });
});
