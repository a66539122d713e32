/**
 * Wizard state machine for the assessment questionnaire.
 *
 * Holds the three steps (general details, controls, result), local presence
 * validation, what-if toggling against a frozen baseline, and draft
 * save/restore. No banding logic lives here: every band shown comes back
 * from the service verbatim, and the result step is only reachable once a
 * complete input has been submitted.
 */

import { ApiRequestError, type WizardClient } from './api.js';
import {
  ANSWER_FIELDS,
  type AnswerField,
  type AssessmentInput,
  type AssessmentResult,
  type ControlAnswers,
  type GeneralDetails,
} from './types.js';

export type WizardStep = 'general_details' | 'controls' | 'result';

export interface PartialInput {
  complexity?: number;
  materiality?: number;
  impact?: number;
  assessed_on?: string;
  controls: Partial<ControlAnswers>;
}

export interface Baseline {
  input: AssessmentInput;
  result: AssessmentResult;
}

export interface WizardState {
  step: WizardStep;
  general: Partial<GeneralDetails>;
  input: PartialInput;
  draftKey: string | null;
  baseline: Baseline | null;
  toggles: AnswerField[];
  whatIfResult: AssessmentResult | null;
  notice: string | null;
}

export function emptyWizardState(): WizardState {
  return {
    step: 'general_details',
    general: {},
    input: { controls: {} },
    draftKey: null,
    baseline: null,
    toggles: [],
    whatIfResult: null,
    notice: null,
  };
}

/** Names of the input fields still unanswered; empty means submittable. */
export function missingFields(input: PartialInput): string[] {
  const missing: string[] = [];
  for (const grade of ['complexity', 'materiality', 'impact', 'assessed_on'] as const) {
    if (input[grade] === undefined || input[grade] === '') missing.push(grade);
  }
  for (const field of ANSWER_FIELDS) {
    if (input.controls[field] === undefined) missing.push(field);
  }
  return missing;
}

export function completeInput(input: PartialInput): AssessmentInput | null {
  if (missingFields(input).length > 0) return null;
  return {
    complexity: input.complexity!,
    materiality: input.materiality!,
    impact: input.impact!,
    assessed_on: input.assessed_on!,
    controls: { ...(input.controls as ControlAnswers) },
  };
}

export class SubmitBlocked extends Error {
  constructor(readonly missing: string[]) {
    super(`input incomplete: ${missing.join(', ')}`);
  }
}

export class Wizard {
  state: WizardState = emptyWizardState();
  private listeners: Array<() => void> = [];

  constructor(private readonly client: WizardClient) {}

  subscribe(listener: () => void): void {
    this.listeners.push(listener);
  }

  private changed(): void {
    for (const listener of this.listeners) listener();
  }

  next(): void {
    if (this.state.step === 'general_details') this.state.step = 'controls';
    this.changed();
  }

  back(): void {
    if (this.state.step === 'controls') this.state.step = 'general_details';
    else if (this.state.step === 'result') this.state.step = 'controls';
    this.changed();
  }

  setGeneral<K extends keyof GeneralDetails>(field: K, value: GeneralDetails[K]): void {
    this.state.general[field] = value;
    this.changed();
  }

  setGrade(field: 'complexity' | 'materiality' | 'impact', value: number): void {
    this.state.input[field] = value;
    this.changed();
  }

  setAssessedOn(value: string): void {
    this.state.input.assessed_on = value;
    this.changed();
  }

  setAnswer(field: AnswerField, value: boolean): void {
    this.state.input.controls[field] = value;
    this.changed();
  }

  /**
   * Validate locally (presence only), then submit. Incomplete forms throw
   * SubmitBlocked without any request leaving the browser.
   */
  async submit(): Promise<AssessmentResult> {
    const missing = missingFields(this.state.input);
    if (missing.length > 0) {
      this.state.notice = `Please answer: ${missing.join(', ')}`;
      this.changed();
      throw new SubmitBlocked(missing);
    }
    const input = completeInput(this.state.input)!;
    try {
      const result = await this.client.assess(input);
      this.state.baseline = { input, result };
      this.state.toggles = [];
      this.state.whatIfResult = null;
      this.state.step = 'result';
      this.state.notice = null;
      this.changed();
      return result;
    } catch (error) {
      if (error instanceof ApiRequestError) {
        this.state.notice = error.field ? `${error.field}: ${error.message}` : error.message;
        this.changed();
      }
      throw error;
    }
  }

  get canToggle(): boolean {
    return this.state.baseline !== null;
  }

  /**
   * Flip one remediation toggle. The baseline input is never mutated; the
   * service re-scores it with the toggle list. Clearing the last toggle
   * restores the baseline display without a request.
   */
  async toggle(field: AnswerField): Promise<void> {
    const baseline = this.state.baseline;
    if (!baseline) throw new Error('no baseline result to explore');
    const active = this.state.toggles.includes(field);
    this.state.toggles = active
      ? this.state.toggles.filter((name) => name !== field)
      : [...this.state.toggles, field];
    if (this.state.toggles.length === 0) {
      this.state.whatIfResult = null;
      this.changed();
      return;
    }
    this.state.whatIfResult = await this.client.whatIf(baseline.input, this.state.toggles);
    this.changed();
  }

  /** The result the panel shows: the what-if view when toggles are active. */
  displayedResult(): AssessmentResult | null {
    return this.state.whatIfResult ?? this.state.baseline?.result ?? null;
  }

  displayedBand(): string | null {
    return this.displayedResult()?.band ?? null;
  }

  async saveDraft(key: string): Promise<void> {
    await this.client.putDraft(key, {
      step: this.state.step,
      general: this.state.general as Record<string, unknown>,
      input: this.state.input as unknown as Record<string, unknown>,
    });
    this.state.draftKey = key;
    this.state.notice = `Draft saved as "${key}"`;
    this.changed();
  }

  /** Restore Previous Input: repopulate fields and step from a saved draft. */
  async restoreDraft(key: string): Promise<void> {
    let draft;
    try {
      draft = await this.client.getDraft(key);
    } catch (error) {
      if (error instanceof ApiRequestError && error.status === 404) {
        this.state = emptyWizardState();
        this.state.notice = `No draft saved under "${key}"`;
        this.changed();
        return;
      }
      throw error;
    }
    this.state = emptyWizardState();
    this.state.general = (draft.general ?? {}) as Partial<GeneralDetails>;
    const input = (draft.input ?? {}) as unknown as Partial<PartialInput>;
    this.state.input = { ...input, controls: { ...(input.controls ?? {}) } };
    if (draft.step === 'controls' || draft.step === 'general_details') {
      this.state.step = draft.step;
    }
    this.state.draftKey = key;
    this.changed();
  }
}
