"""fdia: a scenario language and workbench for false data injection attacks.

Parse attack scenarios written in a small domain language, execute them
against IoT datasets converted to a lossless flat form, and export the
tampered data back to its original serialization.

The usual flow:

    from fdia import DatasetConfig, analyze, execute, export_dataset, ingest, parse

    config = DatasetConfig.from_dict({...})
    dataset = ingest(source_text, config)
    scenario = parse(scenario_text)
    assert not analyze(scenario, config)
    tampered, report = execute(scenario, dataset)
    output = export_dataset(tampered)
"""

from fdia.engine.executor import execute
from fdia.engine.report import ScenarioReport
from fdia.lang.analyzer import analyze
from fdia.lang.formatter import format_scenario
from fdia.lang.parser import parse
from fdia.lang.registry import FunctionRegistry
from fdia.model.dataset import Dataset, DatasetConfig, FlatRecord
from fdia.model.export import export_dataset, export_labels
from fdia.model.ingest import ingest

__version__ = "0.1.0"

__all__ = [
    "execute",
    "ScenarioReport",
    "analyze",
    "format_scenario",
    "parse",
    "FunctionRegistry",
    "Dataset",
    "DatasetConfig",
    "FlatRecord",
    "export_dataset",
    "export_labels",
    "ingest",
    "__version__",
]
