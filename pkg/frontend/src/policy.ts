/** The optimal scripted player: a secret checker.
 *
 * At session creation the player memorises the secret image id and the
 * intended site's identity, origin, and issuer. Each round it enters
 * credentials only when a dialog shows exactly that triple; everything else
 * gets a back-away. This mirrors the screening logic used by the simulator's
 * scripted user, expressed purely over the wire-format screen.
 */

import type { Decision, Intended, Screen } from "./types.js";

export function decideSecretChecker(
  screen: Screen,
  memorizedSecretId: number,
  intended: Intended,
): Decision {
  // obviously sketchy asset set: recognised as fake outright
  if (screen.asset_style === "crayon") return "back_away";

  // a popup's overlay bar shows the true origin and cannot be faked;
  // an unexpected origin there ends the ceremony no matter what's inside
  if (screen.overlay_address_bar !== null && screen.overlay_address_bar !== intended.origin) {
    return "back_away";
  }

  // credentials belong in the dialog, never in a page form
  const dialog = screen.dialog;
  if (dialog === null) return "back_away";

  const secretMatches = dialog.secret_id === memorizedSecretId;
  const identityKnown = dialog.identity_text === intended.identity_text;
  const trentKnown = dialog.trent_name === intended.trent_name;
  return secretMatches && identityKnown && trentKnown ? "enter" : "back_away";
}

/** Laplace-smoothed best response, matching the service's adaptive attacker:
 * value(s) = (wins + 1) / (plays + 2), ties broken by list order. Used by the
 * tests to verify the attacker converges to its best response. */
export function predictBestResponse(
  history: Array<[string, boolean]>,
  strategyNames: string[],
): string {
  let best = strategyNames[0]!;
  let bestValue = -Infinity;
  for (const name of strategyNames) {
    const plays = history.filter(([s]) => s === name);
    const wins = plays.filter(([, captured]) => captured).length;
    const value = (wins + 1) / (plays.length + 2);
    if (value > bestValue) {
      bestValue = value;
      best = name;
    }
  }
  return best;
}
