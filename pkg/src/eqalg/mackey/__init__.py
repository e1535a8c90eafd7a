from .core import *  # noqa: F401,F403
from .witt import *  # noqa: F401,F403
from .box import *  # noqa: F401,F403
