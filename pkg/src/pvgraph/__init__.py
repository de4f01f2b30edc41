"""pvgraph: probabilistic visibility graphs for time series.

Transforms a uniformly sampled series into the classical visibility graph
or its probabilistic extension, where obstructed pairs keep an edge with
probability exp(-rho * h_max), then measures the resulting networks and
runs (rho, p0) parameter sweeps.
"""

from .errors import (DegenerateBaseline, Disconnected, IndexOutOfRange,
                     InsufficientSupport, InvalidParams, ParseError, PvgError,
                     RateMismatch, TooShort)
from .graphs import (HAVE_COMPILED_CORE, PvgMatrices, PvgParams, VgAdjacency,
                     build_classical_vg, build_pvg, degree_sequence,
                     height_matrix, height_matrix_brute, interaction_strength,
                     load_edge_list, load_matrix_binary, obstruction_height_max,
                     pvg_adjacency, save_edge_list, save_matrix_binary,
                     save_matrix_csv, strength_matrix, tunnel_probability)
from .metrics import (BaselineConfig, GraphMetrics, avg_path_length,
                      clustering_coefficient, compute_all, erdos_renyi_gnm,
                      power_law_exponent, power_law_fit, small_worldness)
from .series import (AmSignalParams, NormalizedSeries, PreprocessConfig,
                     TimeSeries, autocorr_max_lag, generate_am,
                     load_series_csv, normalize, preprocess, save_series_csv)
from .sweep import (DEFAULT_P0_GRID, SweepConfig, SweepResult,
                    default_rho_grid, reproduce_fig2, reproduce_fig3,
                    run_sweep, write_aggregates_csv, write_cells_csv,
                    write_result_json)

__version__ = "0.1.0"
