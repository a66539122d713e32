/**
 * DOM layer: renders the wizard steps, the result panel with what-if
 * toggles, and the KPI view. All numbers and band strings are taken from
 * service responses untouched.
 */

import type { ApiClient } from './api.js';
import type { Wizard } from './wizard.js';
import {
  ANSWER_FIELDS,
  BAND_COLORS,
  BAND_ORDER,
  CONTROL_LABELS,
  IMPACT_LABELS,
  type Band,
  type KpiSnapshot,
} from './types.js';

const GENERAL_FIELDS: Array<[keyof import('./types.js').GeneralDetails, string]> = [
  ['group_division', 'Group / Division'],
  ['department', 'Department'],
  ['team', 'Team'],
  ['manager', "Manager's name"],
  ['sme', 'Name of the SME'],
  ['data_steward', 'Who is the Data Steward?'],
  ['data_owner', 'Who is the Data Owner?'],
  ['tester', "Tester's name"],
  ['name', 'Name of the application'],
  ['description', 'Description of the application'],
  ['version', 'Application version'],
  ['last_release_date', 'Date of last release'],
  ['last_changed_date', 'Date last changed or reviewed'],
  ['app_type', 'Application type'],
  ['file_location', 'File location of the application'],
];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, className?: string, text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function bandChip(band: Band): HTMLElement {
  const chip = el('span', 'band-chip', band);
  chip.style.backgroundColor = BAND_COLORS[band];
  chip.style.color = band === 'Amber' ? '#333' : '#fff';
  return chip;
}

function labelled(label: string, control: HTMLElement): HTMLElement {
  const row = el('label', 'field-row');
  row.appendChild(el('span', 'field-label', label));
  row.appendChild(control);
  return row;
}

function renderGeneralStep(wizard: Wizard, mount: HTMLElement): void {
  mount.appendChild(el('h2', undefined, 'General Details'));
  for (const [field, label] of GENERAL_FIELDS) {
    const input = el('input');
    input.type = field.endsWith('_date') ? 'date' : 'text';
    input.value = String(wizard.state.general[field] ?? '');
    input.addEventListener('change', () => wizard.setGeneral(field, input.value as never));
    mount.appendChild(labelled(label, input));
  }
  const nav = el('div', 'nav-row');
  const next = el('button', 'primary', 'Next');
  next.addEventListener('click', () => wizard.next());
  nav.appendChild(next);
  mount.appendChild(nav);
}

function gradeSelect(current: number | undefined, options: string[],
                     onPick: (value: number) => void): HTMLSelectElement {
  const select = el('select');
  select.appendChild(el('option', undefined, '--'));
  options.forEach((label, index) => {
    const option = el('option', undefined, `${index + 1} - ${label}`);
    option.value = String(index + 1);
    select.appendChild(option);
  });
  if (current !== undefined) select.value = String(current);
  select.addEventListener('change', () => {
    if (select.value) onPick(Number(select.value));
  });
  return select;
}

function renderControlsStep(wizard: Wizard, mount: HTMLElement): void {
  mount.appendChild(el('h2', undefined, 'Risk Assessment'));
  const input = wizard.state.input;

  mount.appendChild(labelled('Complexity', gradeSelect(
    input.complexity,
    ['Logging and tracking only', 'Simple formulae', 'Links, macros or modelling'],
    (v) => wizard.setGrade('complexity', v))));
  mount.appendChild(labelled('Materiality', gradeSelect(
    input.materiality,
    ['Internal operations', 'Management reporting', 'Financial / regulatory / confidential'],
    (v) => wizard.setGrade('materiality', v))));
  mount.appendChild(labelled('Impact if it fails', gradeSelect(
    input.impact, [...IMPACT_LABELS], (v) => wizard.setGrade('impact', v))));

  const date = el('input');
  date.type = 'date';
  date.value = input.assessed_on ?? new Date().toISOString().slice(0, 10);
  wizard.setAssessedOn(date.value);
  date.addEventListener('change', () => wizard.setAssessedOn(date.value));
  mount.appendChild(labelled('Assessment date', date));

  mount.appendChild(el('h3', undefined, 'Controls'));
  for (const field of ANSWER_FIELDS) {
    const box = el('input');
    box.type = 'checkbox';
    box.checked = wizard.state.input.controls[field] ?? false;
    if (wizard.state.input.controls[field] === undefined) {
      wizard.setAnswer(field, false);
    }
    box.addEventListener('change', () => wizard.setAnswer(field, box.checked));
    mount.appendChild(labelled(CONTROL_LABELS[field], box));
  }

  const nav = el('div', 'nav-row');
  const back = el('button', undefined, 'Back');
  back.addEventListener('click', () => wizard.back());
  const submit = el('button', 'primary', 'Calculate rating');
  submit.addEventListener('click', () => void wizard.submit().catch(() => undefined));
  nav.appendChild(back);
  nav.appendChild(submit);
  mount.appendChild(nav);

  const draftRow = el('div', 'nav-row');
  const keyInput = el('input');
  keyInput.placeholder = 'draft key';
  keyInput.value = wizard.state.draftKey ?? '';
  const save = el('button', undefined, 'Save draft');
  save.addEventListener('click', () => {
    if (keyInput.value) void wizard.saveDraft(keyInput.value);
  });
  const restore = el('button', undefined, 'Restore Previous Input');
  restore.addEventListener('click', () => {
    if (keyInput.value) void wizard.restoreDraft(keyInput.value);
  });
  draftRow.appendChild(keyInput);
  draftRow.appendChild(save);
  draftRow.appendChild(restore);
  mount.appendChild(draftRow);
}

function renderResultStep(wizard: Wizard, mount: HTMLElement): void {
  const baseline = wizard.state.baseline;
  if (!baseline) return;
  const shown = wizard.displayedResult()!;
  const exploring = wizard.state.whatIfResult !== null;

  mount.appendChild(el('h2', undefined, 'Risk Rating'));

  const chipRow = el('div', 'chip-row');
  if (exploring) {
    chipRow.appendChild(bandChip(baseline.result.band));
    chipRow.appendChild(el('span', 'arrow', '->'));
  }
  chipRow.appendChild(bandChip(shown.band));
  mount.appendChild(chipRow);

  const facts = el('ul', 'facts');
  facts.appendChild(el('li', undefined, `Risk score: ${shown.risk_score} (depth ${shown.control_depth})`));
  facts.appendChild(el('li', undefined,
    `Control deficiency: ${(shown.deficiency * 100).toFixed(0)}%`));
  facts.appendChild(el('li', undefined,
    `Development life cycle required: ${shown.dlc_required ? 'yes' : 'no'}`));
  if (shown.escalated_for_data) {
    facts.appendChild(el('li', undefined, 'Escalated: sensitive data behind weak security'));
  }
  if (shown.clamped_by_impact) {
    facts.appendChild(el('li', undefined, 'Capped by impact category'));
  }
  facts.appendChild(el('li', undefined, `Next review: ${shown.next_review}`));
  mount.appendChild(facts);

  if (shown.reasons.length > 0) {
    mount.appendChild(el('h3', undefined, 'Failed controls'));
    const reasons = el('ul', 'reasons');
    for (const reason of shown.reasons) {
      reasons.appendChild(el('li', undefined, CONTROL_LABELS[reason as never] ?? reason));
    }
    mount.appendChild(reasons);
  }

  mount.appendChild(el('h3', undefined, 'What if we fixed...'));
  const toggles = el('div', 'toggles');
  for (const field of ANSWER_FIELDS) {
    const box = el('input');
    box.type = 'checkbox';
    box.checked = wizard.state.toggles.includes(field);
    box.disabled = !wizard.canToggle;
    box.addEventListener('change', () => void wizard.toggle(field));
    toggles.appendChild(labelled(CONTROL_LABELS[field], box));
  }
  mount.appendChild(toggles);

  const nav = el('div', 'nav-row');
  const back = el('button', undefined, 'Back to questionnaire');
  back.addEventListener('click', () => wizard.back());
  nav.appendChild(back);
  mount.appendChild(nav);
}

export function renderWizard(wizard: Wizard, mount: HTMLElement): void {
  const sync = () => {
    mount.innerHTML = '';
    if (wizard.state.notice) {
      mount.appendChild(el('div', 'notice', wizard.state.notice));
    }
    switch (wizard.state.step) {
      case 'general_details':
        renderGeneralStep(wizard, mount);
        break;
      case 'controls':
        renderControlsStep(wizard, mount);
        break;
      case 'result':
        renderResultStep(wizard, mount);
        break;
    }
  };
  wizard.subscribe(sync);
  sync();
}

export function renderKpi(snapshot: KpiSnapshot, mount: HTMLElement): void {
  mount.innerHTML = '';
  mount.appendChild(el('h2', undefined, `KPI snapshot as of ${snapshot.as_of}`));

  const counts = el('div', 'chip-row');
  for (const band of BAND_ORDER) {
    const cell = el('div', 'count-cell');
    cell.appendChild(bandChip(band));
    cell.appendChild(el('span', 'count', String(snapshot.band_counts[band])));
    counts.appendChild(cell);
  }
  mount.appendChild(counts);

  const table = el('table', 'matrix');
  const head = el('tr');
  head.appendChild(el('th', undefined, 'Band'));
  for (const impact of IMPACT_LABELS) head.appendChild(el('th', undefined, impact));
  table.appendChild(head);
  for (const band of BAND_ORDER) {
    const row = el('tr');
    row.appendChild(el('th', undefined, band));
    for (const count of snapshot.band_impact_matrix[band]) {
      const cell = el('td', count > 0 ? 'filled' : undefined, String(count));
      if (count > 0) cell.style.backgroundColor = BAND_COLORS[band] + '33';
      row.appendChild(cell);
    }
    table.appendChild(row);
  }
  mount.appendChild(table);

  mount.appendChild(el('p', undefined,
    `Total assessed: ${snapshot.total_assessed} | overdue reviews: ` +
    `${snapshot.overdue_count} | Amber/Red without open risk entry: ` +
    `${snapshot.unregistered_amber_red_count}`));
}

export async function mountKpiView(client: ApiClient, mount: HTMLElement): Promise<void> {
  try {
    renderKpi(await client.kpi(), mount);
  } catch (error) {
    mount.textContent = `KPI view unavailable: ${(error as Error).message}`;
  }
}
