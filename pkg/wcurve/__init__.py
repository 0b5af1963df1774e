from .version import __version__
from .errors import *
from .ring import *
from .reports import *
from .graded import *
from .cdg import *
from .coalgebra import *
from .barcobar import *
from .twisted import *
from .ainfty import *
from .homcalc import *
from .golden import *
from . import manifest # keep manifest functions inside of .manifest module namespace
from . import rmod # tensor and hom here are for finite-length modules
