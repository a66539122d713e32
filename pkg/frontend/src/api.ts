/**
 * Thin fetch client for the assessment service. Every method returns the
 * service's JSON verbatim; failures throw ApiRequestError carrying the
 * service's error code so forms can surface field-level messages.
 */

import type {
  ApiErrorBody,
  AssessmentInput,
  AssessmentResult,
  KpiSnapshot,
} from './types.js';

export class ApiRequestError extends Error {
  readonly code: string;
  readonly status: number;
  readonly field: string | null;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message || body.code);
    this.code = body.code;
    this.status = status;
    this.field = body.field ?? null;
  }
}

export interface DraftPayload {
  step: string;
  general: Record<string, unknown> | null;
  input: Record<string, unknown>;
}

export class ApiClient {
  constructor(private readonly baseUrl: string = '') {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { 'content-type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiRequestError(response.status, payload as ApiErrorBody);
    }
    return payload as T;
  }

  assess(input: AssessmentInput, eucaId?: string): Promise<AssessmentResult> {
    const body = eucaId ? { ...input, euca_id: eucaId } : input;
    return this.request<AssessmentResult>('POST', '/api/assess', body);
  }

  whatIf(input: AssessmentInput, toggles: string[]): Promise<AssessmentResult> {
    return this.request<AssessmentResult>('POST', '/api/whatif', { input, toggles });
  }

  kpi(asOf?: string): Promise<KpiSnapshot> {
    const query = asOf ? `?as_of=${encodeURIComponent(asOf)}` : '';
    return this.request<KpiSnapshot>('GET', `/api/kpi${query}`);
  }

  getDraft(key: string): Promise<DraftPayload> {
    return this.request<DraftPayload>('GET', `/api/drafts/${encodeURIComponent(key)}`);
  }

  putDraft(key: string, payload: DraftPayload): Promise<{ key: string; saved: boolean }> {
    return this.request('PUT', `/api/drafts/${encodeURIComponent(key)}`, payload);
  }

  createEuca(record: Record<string, unknown>): Promise<Record<string, unknown>> {
    return this.request('POST', '/api/euca', record);
  }
}

/** The subset of ApiClient the wizard needs; tests substitute fakes. */
export type WizardClient = Pick<ApiClient, 'assess' | 'whatIf' | 'getDraft' | 'putDraft'>;
