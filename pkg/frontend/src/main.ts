import { CardBuilderApp } from "./app.js";

const root = document.getElementById("app");
if (root) {
  // served by the surrogate service itself, so the API is same-origin
  new CardBuilderApp(root, window.location.origin);
}
