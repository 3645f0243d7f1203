/** Browser wiring: upload or capture a still frame, send it to the
 * service through ScanSession, and inject the rendered strings into the
 * page.  All decision logic lives in api.ts / session.ts / view.ts. */

import { ApiClient } from "./api";
import { ScanSession } from "./session";
import type { ScanOutcome } from "./session";
import { errorNotice, featureTable, verdictBanner } from "./view";

const baseUrl =
  new URLSearchParams(window.location.search).get("service") ?? "";
const client = new ApiClient(baseUrl);
const session = new ScanSession(client);

const el = (id: string): HTMLElement => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
};

function renderOutcome(outcome: ScanOutcome | null): void {
  if (!outcome) return;
  const banner = el("banner");
  banner.hidden = false;
  const features = el("features");
  if (outcome.result.kind === "verdict") {
    const { response } = outcome.result;
    const view = verdictBanner(response);
    banner.className = `banner ${view.tone}`;
    banner.textContent =
      `${view.headline} — confidence ${view.confidenceText}`;
    features.innerHTML = featureTable(response.features)
      .map((row) =>
        `<tr class="${row.group}"><td>${row.name}</td>` +
        `<td>${row.value}</td></tr>`)
      .join("");
  } else {
    const { status, reason, message } = outcome.result;
    const notice = errorNotice(status, reason, message);
    banner.className = "banner notice";
    banner.textContent = `${notice.title}: ${notice.detail}`;
    features.innerHTML = "";
  }
  el("history").textContent =
    `${session.history.length} scan(s) this session`;
}

async function scanBytes(bytes: ArrayBuffer): Promise<void> {
  renderOutcome(await session.scan(bytes, "upload"));
}

el("file").addEventListener("change", async (event) => {
  const input = event.target as HTMLInputElement;
  const file = input.files?.[0];
  if (file) await scanBytes(await file.arrayBuffer());
  input.value = "";
});

// Camera: a single still frame per click, no continuous scanning.
let stream: MediaStream | null = null;

el("camera-start").addEventListener("click", async () => {
  const video = el("video") as HTMLVideoElement;
  stream = await navigator.mediaDevices.getUserMedia({ video: true });
  video.srcObject = stream;
  await video.play();
});

el("camera-capture").addEventListener("click", async () => {
  const video = el("video") as HTMLVideoElement;
  if (!stream) return;
  const canvas = document.createElement("canvas");
  canvas.width = video.videoWidth;
  canvas.height = video.videoHeight;
  canvas.getContext("2d")!.drawImage(video, 0, 0);
  const blob: Blob = await new Promise((resolve, reject) =>
    canvas.toBlob(
      (b) => (b ? resolve(b) : reject(new Error("capture failed"))),
      "image/png",
    ));
  await scanBytes(await blob.arrayBuffer());
});

void client.health().then(
  (health) => {
    el("status").textContent =
      `service ready — model ${health.model_id} (${health.kernels})`;
  },
  () => {
    el("status").textContent = "service unreachable";
  },
);
