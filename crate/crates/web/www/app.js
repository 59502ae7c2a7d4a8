import init, { explore, partition, map_word } from "./pkg/succ_lab_web.js";

const $ = (id) => document.getElementById(id);

function show(target, fn) {
  try {
    target.className = "";
    return fn();
  } catch (e) {
    target.className = "err";
    target.textContent = String(e);
    return null;
  }
}

function runExplore() {
  const out = $("ex-out");
  show(out, () => {
    const r = JSON.parse(explore(Number($("ex-n").value), $("ex-fam").value, 200));
    const listed = r.members.length
      ? `<pre>${r.members.join("\n")}</pre>`
      : "<p>(too many to list)</p>";
    out.innerHTML = `<p>${r.family} at n=${r.n}: <b>${r.count}</b></p>${listed}`;
  });
}

function drawBars(sizes) {
  const cv = $("pt-chart");
  const ctx = cv.getContext("2d");
  ctx.clearRect(0, 0, cv.width, cv.height);
  const vals = sizes.map(Number);
  const max = Math.max(1, ...vals);
  const w = cv.width / vals.length;
  ctx.font = "12px sans-serif";
  ctx.textAlign = "center";
  vals.forEach((v, i) => {
    const h = (v / max) * (cv.height - 40);
    ctx.fillStyle = "#4a7ab5";
    ctx.fillRect(i * w + 4, cv.height - 20 - h, w - 8, h);
    ctx.fillStyle = "#222";
    ctx.fillText(String(i + 1), i * w + w / 2, cv.height - 5);
    ctx.fillText(sizes[i], i * w + w / 2, cv.height - 24 - h);
  });
}

function runPartition() {
  const out = $("pt-out");
  show(out, () => {
    const r = JSON.parse(partition(Number($("pt-n").value), $("pt-fam").value, $("pt-inv").checked));
    out.textContent = `${r.set} at n=${r.n}: ${r.equidistributed ? "equidistributed" : "not equidistributed"}`;
    drawBars(r.class_sizes);
  });
}

function runMap() {
  const out = $("mp-out");
  show(out, () => {
    const r = JSON.parse(map_word($("mp-kind").value, $("mp-w").value.trim()));
    const fams = r.families.length ? r.families.join(", ") : "none";
    out.innerHTML = `<p>${r.input} &rarr; <b>${r.output}</b> (fixed points: ${r.fixed_points}; in: ${fams})</p>`;
  });
}

await init();
$("ex-go").onclick = runExplore;
$("pt-go").onclick = runPartition;
$("mp-go").onclick = runMap;
runExplore();
runPartition();
runMap();
