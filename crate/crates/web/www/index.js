import init, { generateStoplist, poissonProfile, aucFromText } from "./pkg/stopkit_web.js";

const SAMPLE = [
  "My flexbox is not working with the padding and I don't know why. Any help would be appreciated!",
  "When I run the script I get an error saying the module is undefined. See https://example.com/q/1",
  "How do I center a div with css grid? I tried margin auto (with no luck).",
  "The loss is not going down when I train the model for 50 epochs, any idea why?",
  "I get an error when the tensor is empty and I don't know how to handle it.",
  "Why is my javascript promise not resolving when I call the function twice?",
  "The list comprehension in my python script returns an empty list, thanks in advance.",
  "@john the border is not showing in the layout when the width is set #css",
].join("\n");

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function escape(s) {
  return String(s).replace(/[&<>"]/g, (c) => ({ "&": "&amp;", "<": "&lt;", ">": "&gt;", '"': "&quot;" })[c]);
}

function showError(target, err) {
  target.innerHTML = `<p class="error">${escape(err)}</p>`;
}

function runList() {
  const out = $("list-out");
  let r;
  try {
    r = JSON.parse(generateStoplist($("docs").value, $("method").value,
      num("size"), num("min-df"), num("min-tf"), num("tolerance"), num("seed")));
  } catch (e) {
    showError(out, e);
    return;
  }
  const words = r.words.map((w) => `<span>${escape(w)}</span>`).join("");
  const rows = r.lowest_tfidf.map((t) =>
    `<tr><td>${escape(t.term)}</td><td>${t.corpus_tf}</td><td>${t.df}</td>` +
    `<td>${t.tfidf.toFixed(4)}</td><td>${t.poisson_ratio.toFixed(3)}</td></tr>`).join("");
  const preview = r.preview.map((p) => `${escape(p.before)}\n  -> ${escape(p.after)}`).join("\n");
  out.innerHTML = `
    <p>${r.n_docs} documents, ${r.vocabulary} terms. ${r.words.length} stop words
    remove ${r.tokens_before - r.tokens_after} of ${r.tokens_before} tokens
    (${r.pct_tokens_removed.toFixed(2)}%), ${r.types_before - r.types_after} of ${r.types_before} types.</p>
    <div class="words">${words}</div>
    <h3>Lowest TF-IDF</h3>
    <table><tr><th>term</th><th>tf</th><th>df</th><th>tf-idf</th><th>est. df / df</th></tr>${rows}</table>
    <h3>Before and after</h3>
    <pre>${preview}</pre>`;
}

function drawBars(canvas, values) {
  const ctx = canvas.getContext("2d");
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const max = Math.max(...values, 1e-12);
  const w = width / values.length;
  ctx.font = "10px sans-serif";
  values.forEach((v, k) => {
    const h = (v / max) * (height - 20);
    ctx.fillStyle = "#4a78b5";
    ctx.fillRect(k * w + 2, height - 14 - h, w - 4, h);
    ctx.fillStyle = "#333";
    ctx.fillText(String(k), k * w + w / 2 - 3, height - 2);
  });
}

function runPoisson() {
  const out = $("pmf-out");
  let r;
  try {
    r = JSON.parse(poissonProfile(num("tf"), num("n"), num("max-k")));
  } catch (e) {
    showError(out, e);
    return;
  }
  drawBars($("pmf"), r.pmf);
  out.innerHTML = `<p>mean per document ${r.mu.toFixed(3)}; P(0) = ${r.pmf[0].toExponential(3)};
    a term spread this way would appear in about ${r.estimated_df.toFixed(1)} of ${num("n")} documents.</p>`;
}

function drawRoc(canvas, points) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#bbb";
  ctx.beginPath();
  ctx.moveTo(0, h);
  ctx.lineTo(w, 0);
  ctx.stroke();
  ctx.strokeStyle = "#c0392b";
  ctx.lineWidth = 2;
  ctx.beginPath();
  points.forEach(([fpr, tpr], i) => {
    const x = fpr * w;
    const y = h - tpr * h;
    if (i === 0) ctx.moveTo(x, y);
    else ctx.lineTo(x, y);
  });
  ctx.stroke();
  ctx.lineWidth = 1;
}

function runAuc() {
  const out = $("auc-out");
  let r;
  try {
    r = JSON.parse(aucFromText($("scores").value));
  } catch (e) {
    showError(out, e);
    return;
  }
  drawRoc($("roc"), r.roc);
  out.innerHTML = `<p>AUC ${r.auc.toFixed(4)} over ${r.n_pos} positive and ${r.n_neg} negative instances.</p>`;
}

await init();
$("docs").value = SAMPLE;
$("run-list").addEventListener("click", runList);
$("run-auc").addEventListener("click", runAuc);
for (const id of ["tf", "n", "max-k"]) $(id).addEventListener("input", runPoisson);
runList();
runPoisson();
runAuc();
