"""torus_scan: orbit classification for 1D and 2D torus maps.

Chaotic orbits are detected through the convergence precision of weighted
Birkhoff averages; regular rotation vectors are split into periodic,
resonant, and incommensurate classes via minimal-denominator search and
resonance orders.  Includes the catalogued 2-torus families, critical
forcing strengths, grid scans with class proportions, and power-law fits.
"""

from .averaging import (CIRCLE_THRESHOLD, DIG_CAP, TORUS_THRESHOLD,
                        ChaosThreshold, LyapunovPair, NumericFailure,
                        RotationResult, bump_weight, bump_weights,
                        classify_chaos, lyapunov_spectrum,
                        rotation_and_digits, weighted_average)
from .critical import (BracketError, CriticalResult, DegenerateMapError,
                       MinDet, det_df, eps_crit, min_det_df)
from .farey import (CapacityError, IrrationalityConfig, QminStats,
                    RationalApprox, is_effectively_irrational, qmin,
                    qmin_band, qmin_statistics)
from .maps import (CATALOG_CASES, DEFAULT_TRANSIENT, DEFAULT_X0, CircleParams,
                   OrbitSpec, Torus2Params, displacement, forcing,
                   iterate_displacements, jacobian, lift_step, orbit_spec,
                   parameter_catalog, params_from_config, params_to_config)
from .resonance import (CHAOTIC, DEFAULT_ORDER_CAP, ERROR, NONRESONANT,
                        PERIODIC, RESONANT, OrbitClass, ResonanceHit,
                        ResonanceStats, classify_rotation_vector,
                        mean_log10_order, order_band, resonance_distance,
                        resonance_order, resonance_statistics)
from .scan import (CSV_COLUMNS, GOLDEN, DigitsHistogram, FitResult,
                   Proportions, ScanRecord, classify_circle, fit_power_law,
                   get_workers, group_proportions, histogram_digits,
                   omega_grid, proportions, scan_circle, scan_torus,
                   set_workers, write_records_csv)

__version__ = "0.1.0"
