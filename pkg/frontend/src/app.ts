// Cockpit entry point: wires connection, view models, canvases, and controls.

import { CockpitConnection } from "./connection.js";
import { ClusterViewModel } from "./cluster.js";
import { CenterStackViewModel } from "./centerstack.js";
import { DrivingInputCapture } from "./input.js";
import { renderCluster, renderMap } from "./render.js";
import { speak } from "./speech.js";
import { TouchDispatcher } from "./touch.js";

const params = new URLSearchParams(location.search);
const WS_URL = params.get("ws") ?? "ws://127.0.0.1:7655";
const CONTROL_HZ = 60;

function $(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
}

const clock = () => performance.now() / 1000;
const conn = new CockpitConnection({ url: WS_URL, clock });
const cluster = new ClusterViewModel();
const stack = new CenterStackViewModel();
const touch = new TouchDispatcher(conn);
const input = new DrivingInputCapture();

const clusterCanvas = $("cluster") as HTMLCanvasElement;
const mapCanvas = $("map") as HTMLCanvasElement;
const welcomeEl = $("welcome");
const bannerEl = $("banner");
const panelEl = $("explanation");
const panelAgentEl = $("explanation-agent");
const panelTextEl = $("explanation-text");
const explainBtn = $("explain") as HTMLButtonElement;
const musicBtn = $("music-toggle") as HTMLButtonElement;
const trackEl = $("music-track");
const volumeEl = $("volume") as HTMLInputElement;
const manualToggle = $("manual-mode") as HTMLInputElement;

conn.onOpen = () => cluster.startSweep(clock());
conn.onUiState = (ui) => {
  cluster.update(ui);
  stack.update(ui);
};
conn.onExplanation = (p) => {
  stack.showExplanation(p, clock());
  speak(`${p.agent_name}: ${p.text}`);
};
conn.onSessionEnd = () => {
  bannerEl.textContent = "session ended";
  bannerEl.classList.remove("hidden");
};
conn.connect();

// ----- touch controls -----

function normFromEvent(ev: MouseEvent): { x: number; y: number } {
  return { x: ev.clientX / innerWidth, y: ev.clientY / innerHeight };
}

explainBtn.addEventListener("click", (ev) => {
  const { x, y } = normFromEvent(ev);
  touch.tap("explain_button", x, y);
});
musicBtn.addEventListener("click", (ev) => {
  const { x, y } = normFromEvent(ev);
  touch.toggleMusic(x, y);
});
volumeEl.addEventListener("change", () => {
  touch.setVolume(Number(volumeEl.value) / 100);
});
mapCanvas.addEventListener("click", (ev) => {
  const { x, y } = normFromEvent(ev);
  touch.tap("background", x, y);
});

// ----- manual driving -----

addEventListener("keydown", (ev) => {
  if (ev.code.startsWith("Arrow")) {
    input.keyDown(ev.code);
    ev.preventDefault();
  }
});
addEventListener("keyup", (ev) => input.keyUp(ev.code));

function pollGamepad(): void {
  const pads = navigator.getGamepads?.() ?? [];
  const pad = pads.find((p) => p !== null);
  if (!pad) {
    input.setGamepadAxes({});
    return;
  }
  input.setGamepadAxes({
    steering: pad.axes[0],
    throttle: pad.buttons[7] ? pad.buttons[7].value : undefined,
    brake: pad.buttons[6] ? pad.buttons[6].value : undefined,
  });
}

setInterval(() => {
  if (!manualToggle.checked) return;
  pollGamepad();
  const u = input.step(1 / CONTROL_HZ);
  conn.send("control_input", {
    steering_norm: u.steering,
    throttle: u.throttle,
    brake: u.brake,
    t_mono: clock(),
  });
}, 1000 / CONTROL_HZ);

// ----- render loop -----

let volumeDirty = false;
volumeEl.addEventListener("input", () => {
  volumeDirty = true;
});
volumeEl.addEventListener("change", () => {
  volumeDirty = false;
});

function frame(): void {
  const now = clock();
  conn.tick(now);

  const stale = conn.isStale(now);
  const cv = cluster.view(now);
  renderCluster(clusterCanvas, cv, stale);

  const sv = stack.view(now, conn.isOpen);
  renderMap(mapCanvas, stale ? null : sv.ui, stale);

  welcomeEl.classList.toggle("hidden", !sv.welcomeVisible);
  bannerEl.classList.toggle("hidden", conn.isOpen && !stale);
  if (!conn.isOpen) bannerEl.textContent = "reconnecting…";
  else if (stale) bannerEl.textContent = "signal lost";

  explainBtn.disabled = !sv.explainEnabled;
  musicBtn.textContent = sv.music.playing ? "pause" : "play";
  trackEl.textContent = sv.music.track;
  if (!volumeDirty) volumeEl.value = String(Math.round(sv.music.volume * 100));

  if (sv.explanation && sv.explanation.visible) {
    panelEl.classList.remove("hidden");
    panelAgentEl.textContent = sv.explanation.agentName;
    panelTextEl.textContent = sv.explanation.text;
  } else {
    panelEl.classList.add("hidden");
  }

  requestAnimationFrame(frame);
}

requestAnimationFrame(frame);
