/**
 * The per-product preference vocabulary: names, kinds, bounds, and
 * defaults, exactly as the service's preference tables define them.
 * Form controls are generated from this table and nowhere else, so the
 * Prefer headers the UI can emit are confined to this vocabulary.
 */

export type SurrogateType =
  | "socialcard"
  | "thumbnail"
  | "imagereel"
  | "wordcloud"
  | "docreel";

export const SURROGATE_TYPES: SurrogateType[] = [
  "socialcard",
  "thumbnail",
  "imagereel",
  "wordcloud",
  "docreel",
];

export type PrefKind = "int" | "yesno" | "text";

export interface PrefSpec {
  name: string;
  kind: PrefKind;
  default: string;
  max?: number;
  description: string;
}

export const PREFERENCES: Record<SurrogateType, PrefSpec[]> = {
  socialcard: [
    { name: "datauri_favicon", kind: "yesno", default: "no", description: "inline favicons as data URIs" },
    { name: "datauri_image", kind: "yesno", default: "no", description: "inline the striking image as a data URI" },
    { name: "using_remote_javascript", kind: "yesno", default: "yes", description: "reference the service's card script" },
    { name: "minify_markup", kind: "yesno", default: "no", description: "minify the card HTML" },
  ],
  thumbnail: [
    { name: "viewport_width", kind: "int", default: "1024", max: 5120, description: "browser viewport width (px)" },
    { name: "viewport_height", kind: "int", default: "768", max: 2880, description: "browser viewport height (px)" },
    { name: "thumbnail_width", kind: "int", default: "208", max: 5120, description: "thumbnail width (px)" },
    { name: "thumbnail_height", kind: "int", default: "156", max: 2880, description: "thumbnail height (px)" },
    { name: "timeout", kind: "int", default: "60", max: 300, description: "render timeout (s)" },
    { name: "remove_banner", kind: "yesno", default: "no", description: "remove the archive banner first" },
  ],
  imagereel: [
    { name: "duration", kind: "int", default: "100", max: 300, description: "display time per image" },
    { name: "imagecount", kind: "int", default: "5", max: 10, description: "number of images" },
    { name: "width", kind: "int", default: "320", max: 5120, description: "reel width (px)" },
    { name: "height", kind: "int", default: "240", max: 2880, description: "reel height (px)" },
  ],
  wordcloud: [
    { name: "colormap", kind: "text", default: "inferno", description: "colormap name" },
    { name: "background_color", kind: "text", default: "white", description: "background color" },
    { name: "textonly", kind: "yesno", default: "no", description: "return the word list as JSON instead" },
  ],
  docreel: [
    { name: "duration", kind: "int", default: "100", max: 300, description: "display time per entry" },
    { name: "imagecount", kind: "int", default: "5", max: 10, description: "number of images" },
    { name: "sentencecount", kind: "int", default: "5", max: 10, description: "number of sentences" },
    { name: "width", kind: "int", default: "320", max: 5120, description: "reel width (px)" },
    { name: "height", kind: "int", default: "240", max: 2880, description: "reel height (px)" },
  ],
};

/** Values the form holds for one surrogate type, keyed by preference name. */
export type OptionValues = Record<string, string>;

export function defaultOptions(type: SurrogateType): OptionValues {
  const values: OptionValues = {};
  for (const spec of PREFERENCES[type]) {
    values[spec.name] = spec.default;
  }
  return values;
}

/**
 * Serialize form values into a Prefer header. Only values that differ
 * from the defaults are sent; names outside the table are dropped, so
 * the header vocabulary is exactly the table's.
 */
export function buildPreferHeader(type: SurrogateType, values: OptionValues): string {
  const pairs: string[] = [];
  for (const spec of PREFERENCES[type]) {
    const value = values[spec.name];
    if (value === undefined || value === "" || value === spec.default) {
      continue;
    }
    pairs.push(`${spec.name}=${value}`);
  }
  return pairs.join(",");
}
