/**
 * Wire types shared with the assessment service. These mirror the service's
 * JSON schemas exactly; the browser never re-derives any of the scoring.
 */

export type Band = 'Blue' | 'Green' | 'Amber' | 'Red';

/** Band colors for the result chip and KPI heat cells. */
export const BAND_COLORS: Record<Band, string> = {
  Blue: '#2E75B6',
  Green: '#70AD47',
  Amber: '#FFC000',
  Red: '#C00000',
};

export const BAND_ORDER: Band[] = ['Blue', 'Green', 'Amber', 'Red'];

/** The eleven control questions, in questionnaire order. */
export const CONTROL_FIELDS = [
  'location_known',
  'operating_instructions',
  'backup_in_place',
  'recovery_tested',
  'version_controlled',
  'review_current',
  'testing_evidenced',
  'access_restricted',
  'integrity_protected',
  'second_person_can_fix',
  'technical_docs_exist',
] as const;

/** Personal-data flags collected alongside the controls. */
export const DATA_FIELDS = ['holds_personal_data', 'holds_sensitive_personal_data'] as const;

export type ControlField = (typeof CONTROL_FIELDS)[number];
export type DataField = (typeof DATA_FIELDS)[number];
export type AnswerField = ControlField | DataField;

export const ANSWER_FIELDS: AnswerField[] = [...CONTROL_FIELDS, ...DATA_FIELDS];

export type ControlAnswers = Record<AnswerField, boolean>;

export interface AssessmentInput {
  complexity: number;
  materiality: number;
  impact: number;
  controls: ControlAnswers;
  assessed_on: string;
}

export interface AssessmentResult {
  deficiency: number;
  control_depth: number;
  risk_score: number;
  band: Band;
  dlc_required: boolean;
  escalated_for_data: boolean;
  clamped_by_impact: boolean;
  reasons: string[];
  next_review: string;
}

/** General Details screen fields, matching the inventory record metadata. */
export interface GeneralDetails {
  group_division: string;
  department: string;
  team: string;
  manager: string;
  sme: string;
  data_steward: string;
  data_owner: string;
  tester: string;
  name: string;
  description: string;
  version: string;
  last_release_date: string;
  last_changed_date: string;
  processes: string[];
  app_type: string;
  file_location: string;
  decision_making: boolean;
  key_data_items: string[];
}

export interface KpiSnapshot {
  as_of: string;
  band_counts: Record<Band, number>;
  band_impact_matrix: Record<Band, number[]>;
  department_histogram: Record<string, number>;
  total_assessed: number;
  overdue_count: number;
  unregistered_amber_red_count: number;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  field?: string | null;
}

export const IMPACT_LABELS = [
  'Inconvenient',
  'Poor Customer Outcomes',
  'Reputational',
  'Loss of Business',
  'Financial',
  'Statutory / Legislative',
] as const;

export const CONTROL_LABELS: Record<AnswerField, string> = {
  location_known: 'Location is known',
  operating_instructions: 'Operating instructions exist',
  backup_in_place: 'Back-up in place',
  recovery_tested: 'Recovery tested',
  version_controlled: 'Version controlled',
  review_current: 'Review up to date',
  testing_evidenced: 'Testing evidenced',
  access_restricted: 'Access restricted',
  integrity_protected: 'Protected against unauthorised change',
  second_person_can_fix: 'Second person can fix it',
  technical_docs_exist: 'Technical documentation exists',
  holds_personal_data: 'Holds personal data',
  holds_sensitive_personal_data: 'Holds sensitive personal data',
};
