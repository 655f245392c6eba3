/**
 * Embed-code construction. Social cards embed as the HTML the service
 * returned, verbatim. Binary surrogates embed as a link-wrapped image
 * whose src is a data URI built from the returned bytes, so the embed
 * outlives this service instance.
 */

import { SurrogateResponse } from "./api.js";
import { SurrogateType } from "./preferences.js";

export function bytesToDataUri(bytes: Uint8Array, contentType: string): string {
  let binary = "";
  const chunk = 0x8000;
  for (let i = 0; i < bytes.length; i += chunk) {
    binary += String.fromCharCode(...bytes.subarray(i, i + chunk));
  }
  return `data:${contentType};base64,${btoa(binary)}`;
}

function escapeAttr(value: string): string {
  return value
    .replaceAll("&", "&amp;")
    .replaceAll('"', "&quot;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;");
}

export function buildEmbedSnippet(
  type: SurrogateType,
  urim: string,
  response: SurrogateResponse,
): string {
  if (response.text !== undefined) {
    // card HTML, or a textonly word list: both embed verbatim
    return response.text;
  }
  const mediaType = response.contentType.split(";")[0].trim() || "application/octet-stream";
  const dataUri = bytesToDataUri(response.bytes ?? new Uint8Array(), mediaType);
  return `<a href="${escapeAttr(urim)}"><img src="${dataUri}" alt="${type} of ${escapeAttr(urim)}"></a>`;
}
