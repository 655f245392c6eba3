/**
 * The service client. The UI computes nothing itself: it sends one
 * product request and shows what comes back.
 */

import { SurrogateType } from "./preferences.js";

export interface SurrogateResponse {
  contentType: string;
  /** card HTML or textonly-JSON payloads */
  text?: string;
  /** binary payloads (PNG/GIF) */
  bytes?: Uint8Array;
  preferenceApplied?: string;
}

export class ServiceError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    super(message);
    this.name = "ServiceError";
    this.status = status;
  }
}

/** Human-readable explanations for the service's status-code contract. */
export function explainStatus(status: number, detail?: string): string {
  const explanations: Record<number, string> = {
    400: "invalid URI: the address must be a full URI-M including its scheme (http:// or https://)",
    404: "the submitted URI does not identify a memento, so no surrogate can be made for it",
    500: "the service hit an internal error while generating the surrogate",
    502: "the service could not connect to the web archive holding this memento",
    504: "the web archive took too long to answer",
  };
  const explanation = explanations[status] ?? `unexpected status ${status}`;
  return detail ? `${explanation} (${detail})` : explanation;
}

export function productUrl(base: string, type: SurrogateType, urim: string): string {
  return `${base.replace(/\/$/, "")}/services/product/${type}/${urim}`;
}

export async function requestSurrogate(
  base: string,
  type: SurrogateType,
  urim: string,
  preferHeader: string,
  signal?: AbortSignal,
): Promise<SurrogateResponse> {
  const headers: Record<string, string> = {};
  if (preferHeader) {
    headers["Prefer"] = preferHeader;
  }
  const response = await fetch(productUrl(base, type, urim), { headers, signal });
  const contentType = response.headers.get("Content-Type") ?? "";
  if (!response.ok) {
    let detail: string | undefined;
    try {
      const body = await response.json();
      detail = typeof body.message === "string" ? body.message : undefined;
    } catch {
      detail = undefined;
    }
    throw new ServiceError(response.status, explainStatus(response.status, detail));
  }
  const applied = response.headers.get("Preference-Applied") ?? undefined;
  if (contentType.startsWith("text/") || contentType.startsWith("application/json")) {
    return {
      contentType,
      text: await response.text(),
      preferenceApplied: applied,
    };
  }
  return {
    contentType,
    bytes: new Uint8Array(await response.arrayBuffer()),
    preferenceApplied: applied,
  };
}
