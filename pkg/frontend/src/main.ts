/** Browser entry point: wire the renderer and the REST client into a
 * playable round loop with reveals and a running score. */

import { ApiClient } from "./api.js";
import { renderScreen } from "./render.js";
import { secretImageSvg } from "./render.js";
import type { Decision, Reveal, ViewModel } from "./types.js";

const api = new ApiClient("");

function revealHtml(reveal: Reveal, userDelta: number): string {
  const outcome = reveal.world === "genuine" ? "That was the real site." : "That was a counterfeit";
  const strategy = reveal.strategy ? ` (<code>${reveal.strategy}</code>)` : "";
  const lesson =
    reveal.exposing_signal && !reveal.exposing_signal.startsWith("none")
      ? `<p class="lesson">The give-away: <strong>${reveal.exposing_signal}</strong>.</p>`
      : "";
  return (
    `<div class="reveal ${reveal.world}"><p>${outcome}${strategy}.` +
    ` Your payoff: ${userDelta >= 0 ? "+" : ""}${userDelta}.</p>${lesson}</div>`
  );
}

async function start(): Promise<void> {
  const root = document.getElementById("app")!;
  const created = await api.createSession({ seed: Date.now() % 2 ** 31 });
  const model: ViewModel = {
    screen: null,
    episode: 0,
    memorizedSecretId: created.secret_id,
    intended: created.intended,
    score: { human_points: 0, attacker_points: 0, episodes_played: 0 },
    reveals: [],
  };

  const memorize = document.createElement("div");
  memorize.className = "memorize-panel";
  memorize.innerHTML =
    `<h2>Memorise your secret image</h2>` +
    secretImageSvg(created.secret_id, "realistic") +
    `<p>Your browser will show this exact picture on every genuine login dialog for ` +
    `<strong>${created.intended.identity_text}</strong>. Enter credentials nowhere else.</p>` +
    `<button id="begin">Start</button>`;
  root.replaceChildren(memorize);
  await new Promise<void>((resolve) =>
    document.getElementById("begin")!.addEventListener("click", () => resolve()),
  );

  const scoreBar = document.createElement("div");
  scoreBar.className = "score-bar";
  const stage = document.createElement("div");
  stage.className = "stage";
  const revealPane = document.createElement("div");
  revealPane.className = "reveal-pane";
  root.replaceChildren(scoreBar, stage, revealPane);

  const refreshScore = () => {
    scoreBar.textContent =
      `Round ${model.score.episodes_played + 1} — you ${model.score.human_points.toFixed(1)}` +
      ` / attacker ${model.score.attacker_points.toFixed(1)}`;
  };

  const nextRound = async (): Promise<void> => {
    const envelope = await api.getScreen(created.session_id);
    model.screen = envelope.screen;
    model.episode = envelope.episode;
    refreshScore();
    stage.innerHTML = renderScreen(envelope.screen);
    stage.querySelectorAll<HTMLElement>("[data-action]").forEach((el) => {
      el.addEventListener("click", (event) => {
        event.preventDefault();
        const action = el.dataset.action!;
        if (action === "dismiss-warning") {
          el.parentElement?.remove();
          return;
        }
        void submit(action as Decision);
      });
    });
  };

  const submit = async (decision: Decision): Promise<void> => {
    const result = await api.submitDecision(created.session_id, model.episode, decision);
    model.score = result.score;
    model.reveals.push(result.reveal);
    revealPane.innerHTML = revealHtml(result.reveal, result.payoffs.user) + revealPane.innerHTML;
    refreshScore();
    await nextRound();
  };

  await nextRound();
}

start().catch((error) => {
  const root = document.getElementById("app")!;
  root.innerHTML = `<div class="error-panel">Could not reach the game service: ${String(error)}</div>`;
});
