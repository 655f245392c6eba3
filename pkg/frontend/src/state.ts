/**
 * UI state: one form, one in-flight request, one last response.
 */

import { SurrogateResponse } from "./api.js";
import { OptionValues, SurrogateType, defaultOptions } from "./preferences.js";

export type Status = "idle" | "loading" | "error" | "ready";

export interface UiRequestState {
  urim: string;
  surrogateType: SurrogateType;
  options: Record<SurrogateType, OptionValues>;
  status: Status;
  errorMessage?: string;
  lastResponse?: {
    response: SurrogateResponse;
    embedSnippet: string;
    urim: string;
    surrogateType: SurrogateType;
  };
}

export function initialState(): UiRequestState {
  return {
    urim: "",
    surrogateType: "socialcard",
    options: {
      socialcard: defaultOptions("socialcard"),
      thumbnail: defaultOptions("thumbnail"),
      imagereel: defaultOptions("imagereel"),
      wordcloud: defaultOptions("wordcloud"),
      docreel: defaultOptions("docreel"),
    },
    status: "idle",
  };
}

export function currentOptions(state: UiRequestState): OptionValues {
  return state.options[state.surrogateType];
}
