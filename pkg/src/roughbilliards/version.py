VERSION = (0, 1, 0)

__version__ = ".".join(map(str, VERSION))
short_version = __version__


import sys

msg = "Rough-billiards is only compatible with Python 3.8 and newer, please consider a newer version."

if sys.version_info < (3, 8):
    raise ImportError(msg)
