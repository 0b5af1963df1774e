from .compile_report import *
from .definitions import *
from .read_manifest import *
