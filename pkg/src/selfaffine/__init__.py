"""Dimension theory of planar diagonal affine iterated function systems with overlaps."""
from .dimensions import (DimensionReport, SpectralSummary, WeightVector, affinity_dimension,
                         entropy, lyapunov_dimension, lyapunov_exponents, natural_weights,
                         pressure, similarity_dimension, theorem_b_dimension)
from .estimator import (BoxCountSeries, CoverSpec, box_count, cover, estimate_box_dimension,
                        estimate_cover_dimension)
from .ifs import (IFS1D, BudgetExceededError, DiagonalIFS, DiagonalMap, IFSFormatError,
                  InvalidWordError, Similarity1D, compose_1d, cylinder_rect, iterate,
                  load_ifs, parse_ifs_document, project)
from .separation import SeparationReport, has_exact_overlap, hochman_report, min_separation
from .subsystem import (HomogeneousSystem, SubsystemResult, TypicalWordSet,
                        approximate_subsystem, homogeneous_subsystem, ssc_thin,
                        typical_counts, typical_words)

__version__ = "0.1.0"
