import init, { lambdaCurve, complexitySeries, boxDimension } from "./pkg/rudin_abelian_wasm.js";

const $ = (id) => document.getElementById(id);

// Draws (xs[i], ys[i]) scaled to the canvas, as a polyline or as dots.
function plot(canvas, xs, ys, { dots = false, line = null } = {}) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 36;
  ctx.clearRect(0, 0, w, h);
  let [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  if (x0 === x1) x1 = x0 + 1;
  if (y0 === y1) y1 = y0 + 1;
  const sx = (x) => pad + ((x - x0) / (x1 - x0)) * (w - 2 * pad);
  const sy = (y) => h - pad - ((y - y0) / (y1 - y0)) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#555";
  ctx.font = "12px sans-serif";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillText(x0.toPrecision(4), pad, h - pad + 16);
  ctx.fillText(x1.toPrecision(4), w - pad - 30, h - pad + 16);
  ctx.fillText(y1.toPrecision(4), 2, pad + 4);
  ctx.fillText(y0.toPrecision(4), 2, h - pad);

  ctx.strokeStyle = ctx.fillStyle = "#1f5fa8";
  if (dots) {
    for (let i = 0; i < xs.length; i++) ctx.fillRect(sx(xs[i]) - 1, sy(ys[i]) - 1, 2, 2);
  } else {
    ctx.lineWidth = 1;
    ctx.beginPath();
    ctx.moveTo(sx(xs[0]), sy(ys[0]));
    for (let i = 1; i < xs.length; i++) ctx.lineTo(sx(xs[i]), sy(ys[i]));
    ctx.stroke();
  }
  if (line) {
    ctx.strokeStyle = "#c33";
    ctx.beginPath();
    ctx.moveTo(sx(x0), sy(line.a + line.b * x0));
    ctx.lineTo(sx(x1), sy(line.a + line.b * x1));
    ctx.stroke();
  }
}

function guarded(out, f) {
  out.classList.remove("err");
  try {
    f();
  } catch (e) {
    out.textContent = String(e.message ?? e);
    out.classList.add("err");
  }
}

function drawLambda() {
  const out = $("lam-out");
  guarded(out, () => {
    const t = performance.now();
    const pts = lambdaCurve($("lam-from").value, $("lam-to").value, Number($("lam-depth").value));
    const xs = [], ys = [];
    for (let i = 0; i < pts.length; i += 2) { xs.push(pts[i]); ys.push(pts[i + 1]); }
    plot($("lam-canvas"), xs, ys);
    out.textContent = `${xs.length} points, min ${Math.min(...ys).toFixed(6)}, max ${Math.max(...ys).toFixed(6)}, ${(performance.now() - t).toFixed(0)} ms`;
  });
}

function drawSeries() {
  const out = $("rho-out");
  guarded(out, () => {
    const ys = Array.from(complexitySeries(Number($("rho-n").value)));
    const xs = ys.map((_, i) => i + 1);
    plot($("rho-canvas"), xs, ys, { dots: true });
    out.textContent = `n = ${ys.length}: rho(n)/sqrt(n) = ${ys[ys.length - 1].toFixed(6)}`;
  });
}

function estimate() {
  const out = $("box-out");
  guarded(out, () => {
    const d = boxDimension($("box-alpha").value, $("box-beta").value, Number($("box-jmin").value), Number($("box-jmax").value));
    const xs = Array.from(d.logInvDelta), ys = Array.from(d.logCount);
    const b = d.slope;
    const a = ys.reduce((s, y, i) => s + y - b * xs[i], 0) / xs.length;
    plot($("box-canvas"), xs, ys, { dots: true, line: { a, b } });
    out.textContent =
      `slope ${d.slope.toFixed(4)}  r2 ${d.r2.toFixed(5)}\n` +
      `on [4a, 4b] ${d.rescaledSlope.toFixed(4)}  refined grid ${d.refinedSlope.toFixed(4)}`;
    d.free();
  });
}

await init();
$("lam-go").onclick = drawLambda;
$("rho-go").onclick = drawSeries;
$("box-go").onclick = estimate;
drawLambda();
drawSeries();
