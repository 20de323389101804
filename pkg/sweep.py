import logging
from timeit import default_timer

from tqdm.contrib.concurrent import thread_map

import susy
from models.domain import AngularMomentum
from models.errors import HyperlandauError
from models.gauges import get_gauge

SWEEP_COLUMNS = ["two_lambda", "lambda", "zero_mode", "origin_exponent", "n_levels", "non_physical"]


class Sweeper():
    """Admissible angular momenta of one field case and their level counts.

    Parameters
    ----------
    case : FieldCase
        A closed-form case.

    workers : int, optional
        Threads used to fan out the per-lambda jobs.

    logger : logging.Logger, optional
    """

    def __init__(self, case, workers=1, logger=logging.getLogger(__name__)):
        self.case = case
        self.gauge = get_gauge(case)
        self.workers = workers
        self.logger = logger

    def __call__(self, two_lambda_min, two_lambda_max, relaxed=False):
        """Rows for every admissible lambda with 2 lambda in [two_lambda_min, two_lambda_max].

        Strict runs step over half-odd lambda only; relaxed runs also visit
        integer lambda, flagged non-physical.
        """
        start = default_timer()
        if relaxed:
            window = [AngularMomentum.from_value(t / 2, relaxed=True)
                      for t in range(two_lambda_min, two_lambda_max + 1)]
        else:
            window = susy.degenerate_lambdas(self.case, max(abs(two_lambda_min), abs(two_lambda_max)),
                                             two_lambda_min=two_lambda_min)
            window = [lam for lam in window if lam.two_lambda <= two_lambda_max]
        self.logger.info("Sweeping {} values of lambda for case {}".format(len(window), self.case.tag))

        rows = thread_map(self._row, window, max_workers=self.workers, desc="sweep", leave=False,
                          disable=len(window) == 0)
        rows = [row for row in rows if row is not None]
        self.logger.info("Finished sweep after {:.1f} s: {} admissible".format(default_timer() - start, len(rows)))
        return rows

    def _row(self, lam):
        verdict = self.gauge.zero_mode_verdict(lam)
        if not verdict.admissible:
            return None
        try:
            n_levels = susy.bound_level_count(self.case, lam)
        except HyperlandauError as e:
            self.logger.debug("lambda={}: {}".format(lam, e))
            n_levels = None
        return {"two_lambda": lam.two_lambda,
                "lambda": lam.value,
                "zero_mode": verdict.status.value,
                "origin_exponent": verdict.origin_exponent,
                "n_levels": n_levels,
                "non_physical": not lam.is_physical}
