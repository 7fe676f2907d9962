import init, { analyze_json, cycles_json, dot, sample_catalog } from "./pkg/cpn_wasm.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";

function options() {
  return {
    coreq: $("coreq").value,
    enforce: $("enforce").checked,
    top: Math.max(1, parseInt($("top").value, 10) || 10),
  };
}

function guard(fn) {
  $("error").textContent = "";
  try {
    fn();
  } catch (e) {
    $("error").textContent = String(e.message ?? e);
  }
}

function el(name, attrs, parent) {
  const node = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  parent.appendChild(node);
  return node;
}

// One column per layer, nodes stacked in id order within a column.
function draw(view) {
  const svg = $("graph");
  svg.replaceChildren();
  const colWidth = 150, rowHeight = 40, boxW = 120, boxH = 26, pad = 20;
  const rows = new Map();
  const pos = view.nodes.map((n) => {
    const row = rows.get(n.layer) ?? 0;
    rows.set(n.layer, row + 1);
    return { x: pad + n.layer * colWidth, y: pad + row * rowHeight };
  });
  const width = pad * 2 + (Math.max(0, ...view.nodes.map((n) => n.layer)) + 1) * colWidth;
  const height = pad * 2 + Math.max(1, ...rows.values()) * rowHeight;
  svg.setAttribute("width", width);
  svg.setAttribute("height", height);

  const defs = el("defs", {}, svg);
  const marker = el("marker", { id: "head", viewBox: "0 0 10 10", refX: 10, refY: 5, markerWidth: 6, markerHeight: 6, orient: "auto" }, defs);
  el("path", { d: "M0,0 L10,5 L0,10 z", fill: "#888" }, marker);

  for (const a of view.arcs) {
    const s = pos[a.source], t = pos[a.target];
    const x1 = s.x + boxW, y1 = s.y + boxH / 2, x2 = t.x, y2 = t.y + boxH / 2;
    const mid = (x1 + x2) / 2;
    const path = el("path", {
      d: `M${x1},${y1} C${mid},${y1} ${mid},${y2} ${x2},${y2}`,
      class: a.provenance === "corequisite" ? "arc coreq" : "arc",
      "stroke-width": 0.5 + 1.5 * a.weight,
      "marker-end": "url(#head)",
    }, svg);
    el("title", {}, path).textContent = `${view.nodes[a.source].label} -> ${view.nodes[a.target].label} (${a.weight.toFixed(3)})`;
  }
  view.nodes.forEach((n, i) => {
    const g = el("g", { class: ["node", ...n.roles, n.stub ? "stub" : ""].join(" "), transform: `translate(${pos[i].x},${pos[i].y})` }, svg);
    el("rect", { width: boxW, height: boxH, rx: 4 }, g);
    el("text", { x: boxW / 2, y: boxH / 2 }, g).textContent = n.label;
    const b = n.betweenness == null ? "" : `, betweenness ${n.betweenness.toFixed(4)}`;
    el("title", {}, g).textContent = `${n.title}\nroles: ${n.roles.join(", ")}\nwk_out ${n.wk_out}${b}`;
  });
}

function runAnalyze() {
  const o = options();
  const view = JSON.parse(analyze_json($("catalog").value, o.coreq, o.enforce, o.top));
  draw(view);
  $("output").textContent = view.summary_text;
}

function runCycles() {
  const cycles = JSON.parse(cycles_json($("catalog").value, options().coreq));
  const lines = cycles.map((c) => c.join(" -> "));
  $("output").textContent = `${cycles.length} cycles\n${lines.join("\n")}`;
}

function runDot() {
  const o = options();
  const text = dot($("catalog").value, o.coreq, o.enforce, o.top);
  $("output").textContent = text;
  const link = document.createElement("a");
  link.href = URL.createObjectURL(new Blob([text], { type: "text/vnd.graphviz" }));
  link.download = "cpn.dot";
  link.click();
  URL.revokeObjectURL(link.href);
}

await init();
$("catalog").value = sample_catalog();
$("analyze").onclick = () => guard(runAnalyze);
$("cycles").onclick = () => guard(runCycles);
$("dot").onclick = () => guard(runDot);
guard(runAnalyze);
