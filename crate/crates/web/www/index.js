import init, { wht, carlet_explore, check_ds } from "./pkg/diffset_web.js";

const $ = (id) => document.getElementById(id);

function verdict(ok) {
  return `<span class="${ok ? "yes" : "no"}">${ok ? "yes" : "no"}</span>`;
}

function fail(out, err) {
  out.innerHTML = `<pre>${String(err)}</pre>`;
}

// Bar chart of a Walsh spectrum, with the ±2^{t/2} band marked when t is even.
function drawSpectrum(canvas, spectrum, t) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  const peak = Math.max(1, ...spectrum.map(Math.abs));
  const mid = h / 2;
  const scale = (mid - 10) / peak;
  const bw = w / spectrum.length;
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(0, mid);
  ctx.lineTo(w, mid);
  ctx.stroke();
  if (t % 2 === 0) {
    const r = 2 ** (t / 2);
    ctx.strokeStyle = "#d88";
    ctx.setLineDash([4, 4]);
    for (const y of [mid - r * scale, mid + r * scale]) {
      ctx.beginPath();
      ctx.moveTo(0, y);
      ctx.lineTo(w, y);
      ctx.stroke();
    }
    ctx.setLineDash([]);
  }
  spectrum.forEach((v, i) => {
    ctx.fillStyle = v >= 0 ? "#3a6ea5" : "#c0504d";
    const bh = v * scale;
    ctx.fillRect(i * bw, v >= 0 ? mid - bh : mid, Math.max(1, bw - 1), Math.abs(bh));
  });
}

function multiplicityTable(m) {
  return Object.entries(m)
    .sort((a, b) => Number(a[0]) - Number(b[0]))
    .map(([v, n]) => `${v}: ${n}`)
    .join(", ");
}

function runDs() {
  const out = $("ds-out");
  try {
    const r = JSON.parse(check_ds($("ds-moduli").value, $("ds-subset").value,
      BigInt($("ds-k").value), BigInt($("ds-lambda").value)));
    out.innerHTML =
      `<p>v = ${r.v}, |D| = ${r.size}; difference set: ${verdict(r.brute)} ` +
      `(character sums agree: ${verdict(r.brute === r.charsum)}); ` +
      `parameters consistent: ${verdict(r.params_consistent)}</p>` +
      `<pre>difference counts by group element: ${r.difference_counts.join(" ")}</pre>`;
  } catch (e) {
    fail(out, e);
  }
}

function runWht() {
  const out = $("wht-out");
  try {
    const t = Number($("wht-t").value);
    const r = JSON.parse(wht(t, $("wht-tt").value));
    const bent = r.bent === null ? "n/a (odd t)" : verdict(r.bent);
    out.innerHTML = `<p>weight ${r.weight}; bent: ${bent}</p><pre>${multiplicityTable(r.multiplicities)}</pre>`;
    drawSpectrum($("wht-chart"), r.spectrum, t);
  } catch (e) {
    fail(out, e);
  }
}

function runCarlet() {
  const out = $("c-out");
  try {
    const spec = JSON.stringify({
      m: Number($("c-m").value),
      P: JSON.parse($("c-p").value),
      L: { basis: JSON.parse($("c-l").value) },
    });
    const r = JSON.parse(carlet_explore(spec));
    const c = r.c_condition;
    let witness = "";
    if (!c.holds) {
      witness = `<pre>non-flat preimage over a = ${c.witness_a.join("")}: ` +
        `base ${c.witness_base.join("")}, vectors ${c.witness_vectors.map((x) => x.join("")).join(" ")}</pre>`;
    }
    out.innerHTML =
      `<p>bent: ${verdict(r.bent)}; C-condition: ${verdict(c.holds)} ` +
      `(${c.cosets_checked} cosets); coordinate case: ${r.coordinate_case}</p>` + witness +
      `<pre>f = 0x${r.tt}\nspectrum: ${multiplicityTable(r.multiplicities)}</pre>`;
    drawSpectrum($("c-chart"), r.spectrum, r.t);
  } catch (e) {
    fail(out, e);
  }
}

await init();
$("ds-run").addEventListener("click", runDs);
$("wht-run").addEventListener("click", runWht);
$("c-run").addEventListener("click", runCarlet);
runDs();
runWht();
runCarlet();
