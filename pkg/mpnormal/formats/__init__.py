from .parser import FormatParser, PositionedJSON
from .config import ProblemConfig, ConfigParser, load_config
from .report import to_json, spectrum_frame, spectrum_to_json, spectrum_to_csv, spectrum_from_json, write_plot_data
