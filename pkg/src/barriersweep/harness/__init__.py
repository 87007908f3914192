"""Instance generation, experiment tables, file formats and rendering."""
from .formats import (FormatError, instance_from_dict, instance_to_dict, load_instance, load_plan,
                      plan_from_dict, plan_to_dict, save_instance, save_plan, save_report)
from .generate import Instance, gen_instance
from .svg import render_svg
from .tables import (CSV_HEADER, ExperimentRow, rows_from_csv, rows_to_csv, run_table_n,
                     run_table_t)
