import { describe, expect, it } from "vitest";

import {
  PREFERENCES,
  SURROGATE_TYPES,
  buildPreferHeader,
  defaultOptions,
} from "../src/preferences.js";

// the documented preference vocabulary, restated independently as the oracle
const DOCUMENTED_VOCABULARY: Record<string, Record<string, string>> = {
  socialcard: {
    datauri_favicon: "no",
    datauri_image: "no",
    using_remote_javascript: "yes",
    minify_markup: "no",
  },
  thumbnail: {
    viewport_width: "1024",
    viewport_height: "768",
    thumbnail_width: "208",
    thumbnail_height: "156",
    timeout: "60",
    remove_banner: "no",
  },
  imagereel: { duration: "100", imagecount: "5", width: "320", height: "240" },
  wordcloud: { colormap: "inferno", background_color: "white", textonly: "no" },
  docreel: {
    duration: "100",
    imagecount: "5",
    sentencecount: "5",
    width: "320",
    height: "240",
  },
};

describe("preference vocabulary", () => {
  it("covers exactly the documented table, names and defaults", () => {
    expect(Object.keys(PREFERENCES).sort()).toEqual(Object.keys(DOCUMENTED_VOCABULARY).sort());
    for (const type of SURROGATE_TYPES) {
      const fromTable = Object.fromEntries(
        PREFERENCES[type].map((spec) => [spec.name, spec.default]),
      );
      expect(fromTable).toEqual(DOCUMENTED_VOCABULARY[type]);
    }
  });

  it("defaultOptions mirrors the table", () => {
    for (const type of SURROGATE_TYPES) {
      expect(defaultOptions(type)).toEqual(DOCUMENTED_VOCABULARY[type]);
    }
  });
});

describe("buildPreferHeader", () => {
  it("sends nothing when every value is the default", () => {
    expect(buildPreferHeader("thumbnail", defaultOptions("thumbnail"))).toBe("");
  });

  it("sends only values that differ from defaults", () => {
    const values = defaultOptions("thumbnail");
    values.viewport_width = "4096";
    values.thumbnail_width = "2048";
    expect(buildPreferHeader("thumbnail", values)).toBe(
      "viewport_width=4096,thumbnail_width=2048",
    );
  });

  it("drops names outside the table vocabulary", () => {
    const values = { ...defaultOptions("wordcloud"), sparkle: "yes", textonly: "yes" };
    expect(buildPreferHeader("wordcloud", values)).toBe("textonly=yes");
  });

  it("remove_banner serializes as documented", () => {
    const values = defaultOptions("thumbnail");
    values.remove_banner = "yes";
    expect(buildPreferHeader("thumbnail", values)).toBe("remove_banner=yes");
  });
});
