import init, { scan_family, check_family, certify_family } from "./pkg/torus_ppt_wasm.js";

const FAMILY_DEFAULTS = {
  werner: { from: 0, to: 1, value: 0.4, fixedD: null },
  isotropic: { from: -0.3, to: 1, value: 0.2, fixedD: null },
  "horodecki-sigma": { from: 2, to: 5, value: 3.5, fixedD: 3 },
  "ha-gamma": { from: 0.2, to: 3, value: 1.5, fixedD: null },
  "ha-bs": { from: 0.2, to: 3, value: 1.5, fixedD: null },
};

const el = (id) => document.getElementById(id);
const familySel = el("family");
const dimSel = el("dim");
const fromInput = el("from");
const toInput = el("to");
const valueInput = el("value");
const errorBox = el("error");

let scanData = null;

function fmt(x, digits = 4) {
  if (!isFinite(x)) return String(x);
  if (x !== 0 && Math.abs(x) < 1e-3) return x.toExponential(2);
  return x.toFixed(digits);
}

function currentD() {
  const fixed = FAMILY_DEFAULTS[familySel.value].fixedD;
  return fixed ?? Number(dimSel.value);
}

function applyDefaults() {
  const def = FAMILY_DEFAULTS[familySel.value];
  fromInput.value = def.from;
  toInput.value = def.to;
  valueInput.min = def.from;
  valueInput.max = def.to;
  valueInput.value = def.value;
  dimSel.disabled = def.fixedD !== null;
  if (def.fixedD !== null) dimSel.value = String(def.fixedD);
}

function drawChart() {
  const canvas = el("chart");
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height;
  ctx.clearRect(0, 0, W, H);
  if (!scanData) return;
  const rows = scanData.rows;
  const xs = rows.map(r => r.value);
  const series = [rows.map(r => r.oracle_min_eig), rows.map(r => r.oracle_pt_min_eig)];
  const ymin = Math.min(0, ...series.flat());
  const ymax = Math.max(0, ...series.flat());
  const pad = 0.08 * (ymax - ymin || 1);
  const y0 = ymin - pad, y1 = ymax + pad;
  const L = 48, R = 12, T = 10, B = 28;
  const px = x => L + (W - L - R) * (x - xs[0]) / (xs[xs.length - 1] - xs[0] || 1);
  const py = y => T + (H - T - B) * (1 - (y - y0) / (y1 - y0));

  // Analytic PPT region band.
  ctx.fillStyle = "rgba(110,168,254,0.10)";
  let bandStart = null;
  for (let i = 0; i < rows.length; i++) {
    const inBand = rows[i].analytic_ppt;
    if (inBand && bandStart === null) bandStart = xs[i];
    if ((!inBand || i === rows.length - 1) && bandStart !== null) {
      const end = inBand ? xs[i] : xs[i - 1];
      ctx.fillRect(px(bandStart), T, px(end) - px(bandStart), H - T - B);
      bandStart = null;
    }
  }

  // Axes and zero line.
  ctx.strokeStyle = "#2c3442";
  ctx.lineWidth = 1;
  ctx.strokeRect(L, T, W - L - R, H - T - B);
  ctx.strokeStyle = "#49536a";
  ctx.beginPath();
  ctx.moveTo(L, py(0)); ctx.lineTo(W - R, py(0));
  ctx.stroke();

  // Threshold line.
  if (scanData.ppt_threshold !== null && scanData.ppt_threshold >= xs[0] && scanData.ppt_threshold <= xs[xs.length - 1]) {
    ctx.strokeStyle = "#6ea8fe";
    ctx.setLineDash([5, 4]);
    ctx.beginPath();
    ctx.moveTo(px(scanData.ppt_threshold), T);
    ctx.lineTo(px(scanData.ppt_threshold), H - B);
    ctx.stroke();
    ctx.setLineDash([]);
  }

  // Curves.
  const colors = ["#f0b429", "#6ea8fe"];
  series.forEach((ys, k) => {
    ctx.strokeStyle = colors[k];
    ctx.lineWidth = 1.8;
    ctx.beginPath();
    ys.forEach((y, i) => i ? ctx.lineTo(px(xs[i]), py(y)) : ctx.moveTo(px(xs[i]), py(y)));
    ctx.stroke();
  });

  // Disagreement markers (none expected).
  rows.forEach((r, i) => {
    if (!r.agreement) {
      ctx.strokeStyle = "#e5484d";
      ctx.beginPath();
      ctx.arc(px(xs[i]), py(r.oracle_pt_min_eig), 5, 0, Math.PI * 2);
      ctx.stroke();
    }
  });

  // Cursor.
  const v = Number(valueInput.value);
  ctx.strokeStyle = "#8b93a3";
  ctx.setLineDash([2, 3]);
  ctx.beginPath();
  ctx.moveTo(px(v), T); ctx.lineTo(px(v), H - B);
  ctx.stroke();
  ctx.setLineDash([]);

  // Tick labels.
  ctx.fillStyle = "#8b93a3";
  ctx.font = "11px system-ui";
  for (let k = 0; k <= 4; k++) {
    const x = xs[0] + (xs[xs.length - 1] - xs[0]) * k / 4;
    ctx.fillText(fmt(x, 2), px(x) - 10, H - B + 16);
    const y = y0 + (y1 - y0) * k / 4;
    ctx.fillText(fmt(y, 3), 4, py(y) + 4);
  }
}

function renderSpectrum(tableId, values) {
  const rows = values.map((v, i) =>
    `<tr><td>λ${i + 1}</td><td class="num" style="color:${v < -1e-9 ? "#e5484d" : "#e6e9ef"}">${fmt(v, 6)}</td></tr>`);
  el(tableId).innerHTML = `<tr><th>#</th><th>value</th></tr>${rows.join("")}`;
}

function renderCheck(doc) {
  const badges = [
    ["positive", doc.positive],
    ["PPT", doc.ppt],
    ["oracle agreement", doc.agreement],
  ].map(([label, on]) => `<span class="badge ${on ? "on" : "off"}">${label}: ${on ? "yes" : "no"}</span>`);
  el("verdicts").innerHTML = badges.join("");
  renderSpectrum("spec-rho", doc.eigenvalues);
  renderSpectrum("spec-pt", doc.pt_eigenvalues);
  const slackRows = doc.ppt_slacks.map(([label, s]) =>
    `<tr><td>ppt ${label}</td><td class="num" style="color:${s < -1e-9 ? "#e5484d" : "#4cc38a"}">${fmt(s, 6)}</td></tr>`);
  const posRows = doc.positive_slacks.map(([label, s]) =>
    `<tr><td>pos ${label}</td><td class="num" style="color:${s < -1e-9 ? "#e5484d" : "#4cc38a"}">${fmt(s, 6)}</td></tr>`);
  el("slacks").innerHTML = `<tr><th>inequality</th><th>slack</th></tr>${posRows.join("")}${slackRows.join("")}`;
}

function renderCertificate(doc, err) {
  if (err) {
    el("cert-summary").textContent = `no certificate here: ${err}`;
    el("cert-terms").innerHTML = "";
    return;
  }
  el("cert-summary").textContent =
    `claim ${doc.claim}, ${doc.terms.length} terms, reconstruction residual ${fmt(doc.residual, 3)}, ` +
    `independently verified: ${doc.sound ? "yes" : "no"}`;
  const rows = doc.terms.map((t, i) =>
    `<tr><td>${i + 1}</td><td class="num">${fmt(t.weight, 6)}</td><td>${t.schmidt_rank}</td></tr>`);
  el("cert-terms").innerHTML = `<tr><th>#</th><th>weight</th><th>schmidt rank</th></tr>${rows.join("")}`;
}

function refreshPoint() {
  const v = Number(valueInput.value);
  el("value-label").textContent = fmt(v, 3);
  try {
    renderCheck(JSON.parse(check_family(familySel.value, currentD(), v)));
    errorBox.textContent = "";
  } catch (e) {
    errorBox.textContent = String(e);
  }
  try {
    renderCertificate(JSON.parse(certify_family(familySel.value, currentD(), v)), null);
  } catch (e) {
    renderCertificate(null, String(e));
  }
  drawChart();
}

function refreshScan() {
  const from = Number(fromInput.value);
  const to = Number(toInput.value);
  valueInput.min = from;
  valueInput.max = to;
  try {
    scanData = JSON.parse(scan_family(familySel.value, currentD(), from, to, 161));
    errorBox.textContent = "";
    const thr = scanData.ppt_threshold;
    el("threshold-note").textContent = thr === null
      ? "no single closed-form threshold for this family"
      : `closed-form PPT threshold at ${scanData.param} = ${fmt(thr, 4)}`;
  } catch (e) {
    scanData = null;
    errorBox.textContent = String(e);
  }
  refreshPoint();
}

async function main() {
  await init();
  applyDefaults();
  familySel.addEventListener("change", () => { applyDefaults(); refreshScan(); });
  dimSel.addEventListener("change", refreshScan);
  fromInput.addEventListener("change", refreshScan);
  toInput.addEventListener("change", refreshScan);
  valueInput.addEventListener("input", refreshPoint);
  refreshScan();
}

main();
