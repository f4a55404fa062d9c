/** Wire types mirrored from the session service's JSON contracts. */

export interface WarningView {
  style: "transient" | "persistent";
}

export interface DialogView {
  identity_text: string;
  trent_name: string;
  secret_id: number;
  has_window_icon: boolean;
}

/** One serialized screen, exactly as GET /sessions/{id}/screen delivers it. */
export interface Screen {
  address: string;
  padlock: boolean;
  green_bar: boolean;
  overlay_address_bar: string | null;
  fullscreen: boolean;
  greyed: boolean;
  warning: WarningView | null;
  dialog: DialogView | null;
  login_form_in_page: boolean;
  window_icons: number;
  taskbar_visible: boolean;
  asset_style: "realistic" | "crayon";
  tick: number;
}

export interface Intended {
  identity_text: string;
  origin: string;
  trent_name: string;
}

export interface SessionCreated {
  session_id: string;
  secret_id: number;
  universe_size: number;
  intended: Intended;
}

export interface ScreenEnvelope {
  episode: number;
  screen: Screen;
}

export type Decision = "enter" | "back_away";

export interface Reveal {
  world: "genuine" | "phish";
  strategy: string | null;
  exposing_signal: string | null;
}

export interface DecisionResult {
  reveal: Reveal;
  payoffs: { user: number; attacker: number };
  score: { human_points: number; attacker_points: number; episodes_played: number };
  episode: number;
  next_episode_ready: boolean;
}

export interface SessionStats {
  n: number;
  n_genuine: number;
  n_phish: number;
  captures: number;
  attack_success_rate: number | null;
  accept_given_genuine: number | null;
  accept_given_phish: number | null;
  wilson_low: number;
  wilson_high: number;
  mean_user_payoff: number;
  mean_attacker_payoff: number;
  per_strategy: Record<string, { trials: number; successes: number }>;
}

/** Everything the view layer holds between rounds. The world type and the
 * attacker's strategy are absent by construction until the reveal arrives. */
export interface ViewModel {
  screen: Screen | null;
  episode: number;
  memorizedSecretId: number;
  intended: Intended;
  score: DecisionResult["score"];
  reveals: Reveal[];
}
