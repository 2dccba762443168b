__version__ = '0.1.0'

from willmore_lab import disk_field
from willmore_lab import exterior
from willmore_lab import geometry
from willmore_lab import solvers
from willmore_lab import willmore
from willmore_lab import surfaces
from willmore_lab import cli
