import init, { spectrum_chains, phase_curve, potential_curves } from "./pkg/hahn_wasm.js";

const CASES = {
  spectrum: [
    [1, "Figure 1: example 1, mu = -14.5"],
    [2, "Figure 2: example 2, V = 7.5"],
    [3, "Figure 3: example 3, a = -7.5"],
  ],
  phase: [
    [1, "Example 1"],
    [2, "Example 2"],
    [3, "Example 3"],
  ],
  potential: [
    [4, "Figure 4: hyperbolic Poschl-Teller (radial Jacobi)"],
    [5, "Figure 5: generalized trigonometric Scarf (Jacobi)"],
    [6, "Figure 6: Morse (Laguerre, whole line)"],
    [7, "Figure 7: isotropic oscillator (radial Laguerre)"],
  ],
};

const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"];

const $ = (id) => document.getElementById(id);
const canvas = $("plot");
const ctx = canvas.getContext("2d");

function operation() {
  return document.querySelector("input[name=op]:checked").value;
}

function fillCases() {
  const select = $("case");
  select.innerHTML = "";
  for (const [id, text] of CASES[operation()]) {
    const o = document.createElement("option");
    o.value = id;
    o.textContent = text;
    select.appendChild(o);
  }
}

function status(text, error = false) {
  const s = $("status");
  s.textContent = text;
  s.className = error ? "error" : "";
}

function col(table, name) {
  return table.columns.indexOf(name);
}

// Bounds of the finite values, trimmed to the 2nd-98th percentiles when asked.
function bounds(values, trim) {
  const v = values.filter(Number.isFinite).sort((a, b) => a - b);
  if (v.length === 0) return [0, 1];
  let lo = v[0], hi = v[v.length - 1];
  if (trim && v.length > 20) {
    lo = v[Math.floor(0.02 * (v.length - 1))];
    hi = v[Math.ceil(0.98 * (v.length - 1))];
  }
  if (lo === hi) { lo -= 1; hi += 1; }
  const pad = 0.05 * (hi - lo);
  return [lo - pad, hi + pad];
}

function ticks(lo, hi, count = 6) {
  const raw = (hi - lo) / count;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => s >= raw);
  const out = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi; t += step) out.push(+t.toPrecision(12));
  return out;
}

// series: [{label, points: [[x, y]], line: bool}]
function draw(series, xLabel, yLabel, trimY) {
  const W = canvas.width, H = canvas.height;
  const m = { l: 70, r: 20, t: 20, b: 50 };
  ctx.clearRect(0, 0, W, H);
  const xs = series.flatMap((s) => s.points.map((p) => p[0]));
  const ys = series.flatMap((s) => s.points.map((p) => p[1]));
  const [x0, x1] = bounds(xs, false);
  const [y0, y1] = bounds(ys, trimY);
  const px = (x) => m.l + ((x - x0) / (x1 - x0)) * (W - m.l - m.r);
  const py = (y) => H - m.b - ((y - y0) / (y1 - y0)) * (H - m.t - m.b);

  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#333";
  ctx.font = "12px system-ui";
  ctx.lineWidth = 1;
  ctx.strokeRect(m.l, m.t, W - m.l - m.r, H - m.t - m.b);
  ctx.textAlign = "center";
  for (const t of ticks(x0, x1)) {
    ctx.fillText(String(t), px(t), H - m.b + 16);
  }
  ctx.textAlign = "right";
  for (const t of ticks(y0, y1)) {
    ctx.fillText(String(t), m.l - 6, py(t) + 4);
  }
  ctx.textAlign = "center";
  ctx.fillText(xLabel, (m.l + W - m.r) / 2, H - 12);
  ctx.save();
  ctx.translate(16, (m.t + H - m.b) / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText(yLabel, 0, 0);
  ctx.restore();

  ctx.save();
  ctx.beginPath();
  ctx.rect(m.l, m.t, W - m.l - m.r, H - m.t - m.b);
  ctx.clip();
  series.forEach((s, i) => {
    ctx.strokeStyle = ctx.fillStyle = COLORS[i % COLORS.length];
    ctx.lineWidth = 1.5;
    if (s.line) {
      ctx.beginPath();
      let pen = false;
      for (const [x, y] of s.points) {
        if (!Number.isFinite(y)) { pen = false; continue; }
        if (pen) ctx.lineTo(px(x), py(y)); else ctx.moveTo(px(x), py(y));
        pen = true;
      }
      ctx.stroke();
    } else {
      s.points.forEach(([x, y], k) => {
        ctx.beginPath();
        ctx.arc(px(x), py(y), k === 0 ? 5 : 3, 0, 2 * Math.PI);
        if (k === 0) ctx.stroke(); else ctx.fill();
      });
    }
  });
  ctx.restore();

  $("legend").innerHTML = series
    .map((s, i) => `<span style="color:${COLORS[i % COLORS.length]}">&#9632; ${s.label}</span>`)
    .join("");
}

function plotSpectrum(t) {
  const [g, re, im] = [col(t, "a_or_gamma"), col(t, "Re_E_scaled"), col(t, "Im_E_scaled")];
  const chains = new Map();
  for (const r of t.rows) {
    if (!chains.has(r[g])) chains.set(r[g], []);
    chains.get(r[g]).push([r[re], r[im]]);
  }
  const name = t.title.endsWith("3") ? "gamma" : "a";
  const series = [...chains].map(([k, pts]) => ({ label: `${name} = ${k}`, points: pts, line: false }));
  const unit = t.rows.length ? t.rows[0][col(t, "units")] : "";
  draw(series, `Re E / (${unit})`, `Im E / (${unit})`, false);
  return `${t.rows.length} levels; circled points are k = 0`;
}

function plotPhase(t) {
  const [e, d, f] = [col(t, "E"), col(t, "delta"), col(t, "flag")];
  const pts = t.rows.map((r) => [r[e], r[d] === null ? NaN : r[d]]);
  draw([{ label: "delta(E)", points: pts, line: true }], "E", "delta (rad)", false);
  const poles = t.rows.filter((r) => r[f] === "pole").length;
  return `${t.rows.length} energies` + (poles ? `, ${poles} at Gamma poles` : "");
}

function plotPotential(t) {
  const x = 0;
  const names = t.columns.slice(1);
  const series = names.map((n) => ({
    label: n,
    points: t.rows.map((r) => [r[x], r[col(t, n)]]),
    line: true,
  }));
  draw(series, t.columns[0], "V", true);
  const md = t.metadata;
  return `closed form ${md.closed_form}; fit V0 = ${(+md["fit.v0"]).toPrecision(8)}, ` +
    `V1 = ${(+md["fit.v1"]).toPrecision(8)}, residual ${(+md["fit.residual"]).toExponential(2)}`;
}

function compute() {
  const id = Number($("case").value);
  const params = $("params").value;
  try {
    let table, summary;
    switch (operation()) {
      case "spectrum":
        table = JSON.parse(spectrum_chains(id, params));
        summary = plotSpectrum(table);
        break;
      case "phase":
        table = JSON.parse(phase_curve(id, params));
        summary = plotPhase(table);
        break;
      default:
        table = JSON.parse(potential_curves(id, params));
        summary = plotPotential(table);
    }
    const used = Object.entries(table.metadata)
      .filter(([k]) => k.startsWith("param."))
      .map(([k, v]) => `${k.slice(6)}=${+v}`)
      .join(" ");
    status(`${summary}\nparameters: ${used}`);
  } catch (e) {
    status(String(e), true);
  }
}

await init();
for (const r of document.querySelectorAll("input[name=op]")) {
  r.addEventListener("change", () => { fillCases(); $("params").value = ""; compute(); });
}
$("case").addEventListener("change", compute);
$("run").addEventListener("click", compute);
$("params").addEventListener("keydown", (e) => { if (e.key === "Enter") compute(); });
fillCases();
compute();
