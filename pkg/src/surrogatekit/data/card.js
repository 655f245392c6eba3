/* Progressive enhancement for surrogate cards: applies the standard
   layout to any .surrogate-card blockquote on the page. Cards render
   fine without this file; it only tightens presentation. */
(function () {
  "use strict";
  function enhance(card) {
    card.style.border = "1px solid #d0d3d6";
    card.style.borderRadius = "6px";
    card.style.padding = "12px";
    card.style.margin = "8px 0";
    card.style.maxWidth = "520px";
    card.style.fontFamily = "system-ui, sans-serif";
    var img = card.querySelector(".card-striking-image");
    if (img) {
      img.style.maxWidth = "100%";
      img.style.height = "auto";
    }
    var archive = card.querySelector(".card-archive-facts");
    if (archive) {
      archive.style.borderTop = "1px solid #e4e6e8";
      archive.style.marginTop = "8px";
      archive.style.fontSize = "85%";
      archive.style.color = "#444";
    }
  }
  var cards = document.querySelectorAll("blockquote.surrogate-card");
  for (var i = 0; i < cards.length; i++) enhance(cards[i]);
})();
