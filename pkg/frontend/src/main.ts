import { ApiClient } from './api.js';
import { mountKpiView, renderWizard } from './render.js';
import { Wizard } from './wizard.js';

const client = new ApiClient('');
const wizard = new Wizard(client);

const wizardMount = document.getElementById('wizard')!;
const kpiMount = document.getElementById('kpi')!;

renderWizard(wizard, wizardMount);

const tabs = document.querySelectorAll<HTMLButtonElement>('nav button[data-tab]');
tabs.forEach((button) => {
  button.addEventListener('click', () => {
    tabs.forEach((b) => b.classList.toggle('active', b === button));
    const showKpi = button.dataset.tab === 'kpi';
    kpiMount.hidden = !showKpi;
    wizardMount.hidden = showKpi;
    if (showKpi) void mountKpiView(client, kpiMount);
  });
});
