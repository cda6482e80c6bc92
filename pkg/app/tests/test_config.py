import os
import tempfile

from django.test import SimpleTestCase, override_settings

from app.exceptions import ConfigError
from app.utils.config_util import build_config, load_config, load_simulation_config
from app.utils.constants import EXPERIMENT, FORMULA_VOTE_SIZES, TEXT_VOTE_SIZES


class ConfigFileMixin:
    def setUp(self):
        super().setUp()
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def write(self, text, name='config.toml'):
        path = os.path.join(self.directory.name, name)
        with open(path, 'w', encoding='utf-8') as file:
            file.write(text)
        return path


class RunConfigTest(ConfigFileMixin, SimpleTestCase):
    def test_empty_file_gives_defaults(self):
        config = load_config(self.write(''))
        self.assertEqual((config.rel_tol, config.abs_tol, config.seed), (1e-4, 1e-6, 0))
        self.assertEqual(config.vote_sizes, (5, 5))
        self.assertTrue(config.percentage_equivalence)
        self.assertFalse(config.label_mode)
        self.assertEqual(load_config(), config)

    def test_overrides(self):
        config = load_config(self.write('rel_tol = 0.01\nlabel_mode = true\nseed = 7\nworkers = 4\n'))
        self.assertEqual(config.tolerance.rel_tol, 0.01)
        self.assertTrue(config.tolerance.label_mode)
        self.assertEqual((config.seed, config.workers), (7, 4))

    def test_vote_sizes(self):
        config = load_config(self.write('vote_sizes = [10, 0]\n'))
        self.assertEqual(config.vote_sizes, TEXT_VOTE_SIZES)
        self.assertEqual((config.n_text, config.n_formula), (10, 0))
        self.assertEqual(load_config(self.write('vote_sizes = [0, 10]\n')).vote_sizes, FORMULA_VOTE_SIZES)

    def test_negative_tolerance(self):
        with self.assertRaises(ConfigError) as context:
            load_config(self.write('rel_tol = -1\n'))
        self.assertEqual(context.exception.key, 'rel_tol')

    def test_unknown_key(self):
        with self.assertRaises(ConfigError) as context:
            load_config(self.write('temperature = 0.7\n'))
        self.assertEqual(context.exception.key, 'temperature')

    def test_vote_sizes_must_allow_a_candidate(self):
        with self.assertRaises(ConfigError) as context:
            build_config({'vote_sizes': [0, 0]})
        self.assertEqual(context.exception.key, 'vote_sizes')

    def test_rejects_tables_and_bad_syntax(self):
        with self.assertRaises(ConfigError):
            load_config(self.write('[judge]\nrel_tol = 0.1\n'))
        with self.assertRaises(ConfigError):
            load_config(self.write('rel_tol = \n'))

    def test_missing_file(self):
        with self.assertRaises(OSError):
            load_config(os.path.join(self.directory.name, 'absent.toml'))

    @override_settings(FORMULA_TUNING={'rel_tol': 0.5, 'abs_tol': 0.0, 'percentage_equivalence': False,
                                       'label_mode': False, 'vote_sizes': [0, 10], 'seed': 3,
                                       'textual_partial_credit': False, 'workers': 1})
    def test_defaults_come_from_settings(self):
        config = build_config()
        self.assertEqual((config.rel_tol, config.seed, config.vote_sizes), (0.5, 3, (0, 10)))
        self.assertFalse(config.textual_partial_credit)


class SimulationConfigTest(ConfigFileMixin, SimpleTestCase):
    def test_defaults(self):
        config = load_simulation_config(None, EXPERIMENT.DOMINANCE)
        self.assertEqual(config.fidelities, (0.5, 0.9, 1.0))
        self.assertEqual(config.n_tasks, 100)
        self.assertEqual(config.coverage, 0.6)

    def test_overrides(self):
        path = self.write('n_tasks = 5\nfidelities = [0.25, 1.0]\nrl_mode = "sampled"\n')
        config = load_simulation_config(path, EXPERIMENT.DOMINANCE)
        self.assertEqual((config.n_tasks, config.fidelities, config.rl_mode), (5, (0.25, 1.0), 'sampled'))

    def test_dominance_needs_full_fidelity(self):
        with self.assertRaises(ConfigError) as context:
            load_simulation_config(self.write('fidelities = [0.5, 0.9]\n'), EXPERIMENT.DOMINANCE)
        self.assertEqual(context.exception.key, 'fidelities')

    def test_comparison_needs_partial_coverage(self):
        path = self.write('coverage = 1.0\n')
        with self.assertRaises(ConfigError):
            load_simulation_config(path, EXPERIMENT.SFT_VS_RL)
        self.assertEqual(load_simulation_config(path, EXPERIMENT.DOMINANCE).coverage, 1.0)

    def test_rejects_unknown_keys_and_bad_values(self):
        with self.assertRaises(ConfigError):
            load_simulation_config(self.write('kl_coef = 0.001\n'), EXPERIMENT.SFT_VS_RL)
        with self.assertRaises(ConfigError):
            load_simulation_config(self.write('template = "median"\n'), EXPERIMENT.SFT_VS_RL)
        with self.assertRaises(ConfigError):
            load_simulation_config(self.write('coverage = 0\n'), EXPERIMENT.SFT_VS_RL)
