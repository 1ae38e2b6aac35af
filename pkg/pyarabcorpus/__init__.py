__version__ = "0.3.0"

from .constants import *
from .exceptions import *
from .alphabet import *
from .normalize import *
from .manifest import *
from .filters import *
from .metrics import *
from .segment_vtt import *
from .dedup import *
from .splits import *
from .stats import *
from .drop_ledger import *
from .registry import *
from .pipeline import *
