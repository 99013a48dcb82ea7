from finsler.cli.config import RunConfig, check_schema, parse_vector, read_user_config
from finsler.cli.report import Report, dumps, write_csv, write_json
