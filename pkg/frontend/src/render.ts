/** Pure HTML-string renderer for serialized screens.
 *
 * Renders only fields present in the wire contract: the mock desktop,
 * browser chrome (address, padlock, green bar), popup overlay bar, modal
 * dialog with the secret image, warning banners (transient vs persistent
 * with a dismiss control), taskbar, and the deliberately sketchy "crayon"
 * asset set. Screens that fail the structural check render a visible error
 * panel instead of a best-effort guess.
 */

import type { Screen } from "./types.js";

const SCREEN_FIELDS: Record<string, (v: unknown) => boolean> = {
  address: (v) => typeof v === "string",
  padlock: (v) => typeof v === "boolean",
  green_bar: (v) => typeof v === "boolean",
  overlay_address_bar: (v) => v === null || typeof v === "string",
  fullscreen: (v) => typeof v === "boolean",
  greyed: (v) => typeof v === "boolean",
  warning: (v) =>
    v === null ||
    (typeof v === "object" &&
      v !== null &&
      ["transient", "persistent"].includes((v as { style?: string }).style ?? "")),
  dialog: (v) =>
    v === null ||
    (typeof v === "object" &&
      v !== null &&
      typeof (v as { secret_id?: unknown }).secret_id === "number" &&
      typeof (v as { identity_text?: unknown }).identity_text === "string" &&
      typeof (v as { trent_name?: unknown }).trent_name === "string" &&
      typeof (v as { has_window_icon?: unknown }).has_window_icon === "boolean"),
  login_form_in_page: (v) => typeof v === "boolean",
  window_icons: (v) => typeof v === "number" && v >= 0,
  taskbar_visible: (v) => typeof v === "boolean",
  asset_style: (v) => v === "realistic" || v === "crayon",
  tick: (v) => typeof v === "number" && v >= 0,
};

/** Structural validation against the screen contract; returns problems. */
export function validateScreen(candidate: unknown): string[] {
  if (typeof candidate !== "object" || candidate === null) return ["screen is not an object"];
  const record = candidate as Record<string, unknown>;
  const problems: string[] = [];
  for (const [field, check] of Object.entries(SCREEN_FIELDS)) {
    if (!(field in record)) problems.push(`missing field: ${field}`);
    else if (!check(record[field])) problems.push(`bad value for: ${field}`);
  }
  for (const key of Object.keys(record)) {
    if (!(key in SCREEN_FIELDS)) problems.push(`unexpected field: ${key}`);
  }
  return problems;
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Deterministic, visually unambiguous picture for a secret id.
 *
 * The deck is procedural: the id picks a shape, fill, ring colour, and
 * rotation, so any two ids in a universe of a few hundred are easy to tell
 * apart at a glance — match/mismatch is unmistakable.
 */
export function secretImageSvg(secretId: number, assetStyle: "realistic" | "crayon"): string {
  const shapes = ["circle", "square", "triangle", "diamond", "star", "hex", "ring", "cross"];
  const shape = shapes[secretId % shapes.length]!;
  const hue = (secretId * 47) % 360;
  const ringHue = (hue + 150) % 360;
  const rotation = (secretId * 29) % 360;
  const wobble = assetStyle === "crayon" ? ' stroke-dasharray="7 3" stroke-linecap="round"' : "";
  const stroke = assetStyle === "crayon" ? 6 : 3;

  let body: string;
  const fill = `hsl(${hue} 70% 55%)`;
  switch (shape) {
    case "circle":
      body = `<circle cx="50" cy="50" r="28" fill="${fill}"/>`;
      break;
    case "square":
      body = `<rect x="25" y="25" width="50" height="50" fill="${fill}"/>`;
      break;
    case "triangle":
      body = `<polygon points="50,18 82,78 18,78" fill="${fill}"/>`;
      break;
    case "diamond":
      body = `<polygon points="50,15 85,50 50,85 15,50" fill="${fill}"/>`;
      break;
    case "star":
      body = `<polygon points="50,15 61,40 88,40 66,57 74,84 50,68 26,84 34,57 12,40 39,40" fill="${fill}"/>`;
      break;
    case "hex":
      body = `<polygon points="30,22 70,22 90,50 70,78 30,78 10,50" fill="${fill}"/>`;
      break;
    case "ring":
      body = `<circle cx="50" cy="50" r="26" fill="none" stroke="${fill}" stroke-width="14"/>`;
      break;
    default:
      body = `<path d="M40 15h20v25h25v20H60v25H40V60H15V40h25z" fill="${fill}"/>`;
  }
  return (
    `<svg class="secret-image" viewBox="0 0 100 100" width="96" height="96" ` +
    `data-secret-id="${secretId}" role="img" aria-label="secret image ${secretId}">` +
    `<circle cx="50" cy="50" r="46" fill="none" stroke="hsl(${ringHue} 60% 45%)" ` +
    `stroke-width="${stroke}"${wobble}/>` +
    `<g transform="rotate(${rotation} 50 50)">${body}</g></svg>`
  );
}

function renderWarning(screen: Screen): string {
  if (!screen.warning) return "";
  if (screen.warning.style === "persistent") {
    return (
      `<div class="warning persistent" data-warning="persistent">` +
      `This site has gone full screen.` +
      `<button class="dismiss-warning" data-action="dismiss-warning">Dismiss</button></div>`
    );
  }
  return (
    `<div class="warning transient" data-warning="transient">` +
    `This site has gone full screen.</div>`
  );
}

function renderDialog(screen: Screen): string {
  const dialog = screen.dialog;
  if (!dialog) return "";
  const icon = dialog.has_window_icon
    ? `<span class="window-icon" data-window-icon="true">&#9679;</span>`
    : "";
  return (
    `<div class="modal-dialog${screen.greyed ? " on-greyed" : ""}">` +
    `<div class="dialog-titlebar">${icon}<span class="dialog-title">Log in</span></div>` +
    `<div class="dialog-identity">${escapeHtml(dialog.identity_text)}</div>` +
    `<div class="dialog-trent">Verified by ${escapeHtml(dialog.trent_name)}</div>` +
    secretImageSvg(dialog.secret_id, screen.asset_style) +
    `<input class="dialog-user" placeholder="user name"/>` +
    `<input class="dialog-pass" type="password" placeholder="password"/>` +
    `<div class="dialog-buttons">` +
    `<button data-action="enter">Log in</button>` +
    `<button data-action="back_away">Back away</button></div></div>`
  );
}

function renderChromeBar(screen: Screen): string {
  if (screen.fullscreen && screen.address === "") return ""; // bare fullscreen: no chrome at all
  return (
    `<div class="chrome-bar">` +
    `<span class="padlock">${screen.padlock ? "&#128274;" : ""}</span>` +
    `<span class="address${screen.green_bar ? " green-bar" : ""}">${escapeHtml(screen.address)}</span>` +
    `</div>`
  );
}

function renderPage(screen: Screen): string {
  if (!screen.login_form_in_page) return `<div class="page"></div>`;
  return (
    `<div class="page"><form class="in-page-login">` +
    `<input placeholder="user name"/><input type="password" placeholder="password"/>` +
    `<button data-action="enter">Log in</button>` +
    `<button data-action="back_away">Back away</button></form></div>`
  );
}

function renderTaskbar(screen: Screen): string {
  if (!screen.taskbar_visible) return "";
  const icons = Array.from(
    { length: screen.window_icons },
    (_, i) => `<span class="task-icon" data-task="${i}"></span>`,
  ).join("");
  return `<div class="taskbar"><span class="start-button">Start</span>${icons}</div>`;
}

/** Render one screen to HTML. Invalid input yields a visible error panel. */
export function renderScreen(candidate: unknown): string {
  const problems = validateScreen(candidate);
  if (problems.length > 0) {
    const items = problems.map((p) => `<li>${escapeHtml(p)}</li>`).join("");
    return `<div class="error-panel">The service sent a screen this client cannot draw safely:<ul>${items}</ul></div>`;
  }
  const screen = candidate as Screen;
  const overlay = screen.overlay_address_bar;
  return (
    `<div class="desktop asset-${screen.asset_style}${screen.fullscreen ? " fullscreen" : ""}">` +
    renderWarning(screen) +
    renderChromeBar(screen) +
    (overlay !== null
      ? `<div class="popup-overlay-bar" data-true-origin="${escapeHtml(overlay)}">${escapeHtml(overlay)}</div>`
      : "") +
    `<div class="viewport${screen.greyed ? " greyed" : ""}">` +
    renderPage(screen) +
    renderDialog(screen) +
    `</div>` +
    renderTaskbar(screen) +
    `</div>`
  );
}
