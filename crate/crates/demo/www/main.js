// Build the wasm package into ./pkg first, e.g.
//   wasm-pack build crates/demo --target web --out-dir www/pkg
import init, { summarizeSeries, tightnessCurves, distanceMoments } from "./pkg/seaidx_demo.js";

const COLORS = ["#888", "#d9480f", "#1971c2", "#2f9e44"];
const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function frame(canvas, xs, ys) {
  const ctx = canvas.getContext("2d");
  const pad = 50;
  const [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  const [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  const sx = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (canvas.width - 2 * pad);
  const sy = (y) => canvas.height - pad - ((y - y0) / (y1 - y0 || 1)) * (canvas.height - 2 * pad);
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#ccc";
  ctx.strokeRect(pad, pad, canvas.width - 2 * pad, canvas.height - 2 * pad);
  ctx.fillStyle = "#555";
  ctx.font = "22px sans-serif";
  ctx.fillText(y1.toPrecision(3), 4, pad + 8);
  ctx.fillText(y0.toPrecision(3), 4, canvas.height - pad);
  ctx.fillText(String(+x0.toPrecision(3)), pad, canvas.height - 12);
  ctx.fillText(String(+x1.toPrecision(3)), canvas.width - pad - 60, canvas.height - 12);
  return { ctx, sx, sy };
}

function lines(canvas, xs, series, opts = {}) {
  const all = series.flatMap((s) => s.values);
  const { ctx, sx, sy } = frame(canvas, opts.xs ?? xs, opts.yRange ?? all);
  series.forEach((s, i) => {
    ctx.strokeStyle = s.color ?? COLORS[i % COLORS.length];
    ctx.lineWidth = s.width ?? 2;
    ctx.beginPath();
    s.values.forEach((y, j) => (j ? ctx.lineTo(sx(xs[j]), sy(y)) : ctx.moveTo(sx(xs[j]), sy(y))));
    ctx.stroke();
  });
  return { ctx, sx, sy };
}

function legend(id, entries) {
  $(id).innerHTML = entries
    .map((e, i) => `<span><i class="swatch" style="background:${e.color ?? COLORS[i]}"></i>${e.label}</span>`)
    .join("");
}

function guarded(fn) {
  return () => {
    $("status").textContent = "";
    try {
      fn();
    } catch (e) {
      $("status").innerHTML = `<span class="error">${e.message ?? e}</span>`;
    }
  };
}

function drawSeries() {
  const v = JSON.parse(summarizeSeries($("s-kind").value, num("s-m"), num("s-l"), num("s-bits"), BigInt(num("s-seed"))));
  const xs = v.series.map((_, i) => i);
  const { ctx, sy } = lines($("s-canvas"), xs, [
    { values: v.series, width: 1.5 },
    { values: v.paa.reconstruction },
    { values: v.dft.reconstruction },
  ]);
  ctx.strokeStyle = "rgba(0,0,0,0.12)";
  ctx.setLineDash([6, 6]);
  for (const b of v.sax.breakpoints) {
    ctx.beginPath();
    ctx.moveTo(50, sy(b));
    ctx.lineTo($("s-canvas").width - 50, sy(b));
    ctx.stroke();
  }
  ctx.setLineDash([]);
  legend("s-legend", [
    { label: "series" },
    { label: `PAA (rms ${v.paa.rms.toFixed(3)})` },
    { label: `DFT (rms ${v.dft.rms.toFixed(3)})` },
  ]);
  $("s-sax").textContent = `SAX word (${v.sax.bits} bits): ${v.sax.symbols.join(" ")}`;
}

function drawTightness() {
  const v = JSON.parse(tightnessCurves($("t-kind").value, num("t-n"), num("t-m"), num("t-l"), num("t-q"), BigInt(num("t-seed"))));
  const xs = v.budgets.map(Math.log10);
  lines($("t-canvas"), xs, [{ values: v.paa, color: COLORS[1] }, { values: v.dft_dea, color: COLORS[2] }]);
  legend("t-legend", [
    { label: "PAA", color: COLORS[1] },
    { label: "DFT-DEA", color: COLORS[2] },
    { label: `x: log10 budget (${v.budgets[0]} to ${v.budgets.at(-1)})`, color: "transparent" },
  ]);
}

function drawMoments() {
  const v = JSON.parse(distanceMoments(num("c-m"), num("c-pairs"), BigInt(num("c-seed"))));
  const h = v.histogram;
  const freq = h.counts.map((c) => c / (v.pairs * h.width));
  const canvas = $("c-canvas");
  const { ctx, sx, sy } = frame(canvas, h.centers, [0, ...freq, ...h.density]);
  ctx.fillStyle = "rgba(25,113,194,0.35)";
  h.centers.forEach((c, i) => {
    const left = sx(c - h.width / 2), right = sx(c + h.width / 2);
    ctx.fillRect(left, sy(freq[i]), right - left - 1, sy(0) - sy(freq[i]));
  });
  ctx.strokeStyle = COLORS[1];
  ctx.lineWidth = 3;
  ctx.beginPath();
  h.centers.forEach((c, i) => (i ? ctx.lineTo(sx(c), sy(h.density[i])) : ctx.moveTo(sx(c), sy(h.density[i]))));
  ctx.stroke();
  const fmt = (x) => x.toPrecision(5);
  $("c-table").innerHTML =
    "<tr><th>scale</th><th>mean</th><th>sampled</th><th>variance</th><th>sampled</th></tr>" +
    v.rows
      .map((r) => `<tr><td>${r.scale}</td><td>${fmt(r.mean)}</td><td>${fmt(r.sampled_mean)}</td><td>${fmt(r.variance)}</td><td>${fmt(r.sampled_variance)}</td></tr>`)
      .join("");
}

await init();
$("s-run").onclick = guarded(drawSeries);
$("t-run").onclick = guarded(drawTightness);
$("c-run").onclick = guarded(drawMoments);
guarded(drawSeries)();
guarded(drawMoments)();
