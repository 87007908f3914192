"""Mobile-sensor plans for barrier sweep coverage of curves and data-mule gathering,
with simulation-based verification."""
from .datamule import DataMulePlan, build_g2n, plan_mdmdg
from .geometry import (ArcWitness, Point2D, Polyline, Segment, arc_point, polyline_distance,
                       segment_distance, split_segment)
from .graphcore import (Forest, Multigraph, WeightedGraph, double_edges, eulerian_tour,
                        kruskal_forest, min_weight_perfect_matching)
from .kernels import BACKEND
from .multi_planner import (ConnectivityGraph, MultiDeploymentPlan, SkeletonGraph,
                            build_connectivity_graph, build_skeleton, plan_bscmc, plan_special)
from .simulator import (CoverageReport, MeetingReport, RechargeReport, SensorStrategy,
                        simulate_energy, simulate_mdmdg, simulate_sweep, tour_oracle)
from .single_planner import (DeploymentPlan, EnergyInstance, ETour, InfeasibleError,
                             concat_e_tours, decompose_e_tours, plan_energy_restricted,
                             plan_single_curve)

__version__ = "0.1.0"
