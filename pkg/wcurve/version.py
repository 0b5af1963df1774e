from __future__ import absolute_import, division, print_function
from os.path import join as pjoin

# Format expected by setup.py: string of form "X.Y.Z"
_version_major = 0
_version_minor = 1
_version_micro = 0  # use '' for first of series, number for 1 and above
_version_extra = 'dev'
# _version_extra = ''  # Uncomment this for full releases

# Construct full version string from these.
_ver = [_version_major, _version_minor]
if _version_micro:
    _ver.append(_version_micro)
if _version_extra:
    _ver.append(_version_extra)

__version__ = '.'.join(map(str, _ver))

CLASSIFIERS = [
    "Intended Audience :: Science/Research",
    "License :: OSI Approved :: MIT License",
    "Operating System :: OS Independent",
    "Programming Language :: Python :: 3",
    "Topic :: Scientific/Engineering :: Mathematics"
]

# Description should be a one-liner:
description = ("wcurve: exact computer algebra for weakly curved DG- and "
               "A-infinity algebras over truncated local rings.")
# Long description will go up on the pypi page
long_description = """

wcurve
======
Exact construction and verification of weakly curved DG- and A-infinity
algebras, their modules, bar/cobar constructions, twisting cochains and Ext
computations over k[eps]/eps^N and Z/p^N.


License
=======
``wcurve`` is licensed under the terms of the MIT license. See the file
"LICENSE" for information on the history of this software, terms & conditions
for usage, and a DISCLAIMER OF ALL WARRANTIES.

All trademarks referenced herein are property of their respective holders.
"""

NAME = "wcurve"
MAINTAINER = "wcurve developers"
MAINTAINER_EMAIL = ""
DESCRIPTION = description
LONG_DESCRIPTION = long_description
LONG_DESCRIPTION_CONTENT_TYPE = "text/markdown"
URL = ""
DOWNLOAD_URL = ""
LICENSE = "MIT"
AUTHOR = "wcurve developers"
AUTHOR_EMAIL = ""
PLATFORMS = "OS Independent"
MAJOR = _version_major
MINOR = _version_minor
MICRO = _version_micro
VERSION = __version__
PACKAGE_DATA = {'wcurve': [pjoin('manifest', 'examples', '*.json')]}
REQUIRES = [
    "numpy",
    "pandas",
]
PYTHON_REQUIRES = ">= 3.8"
ENTRY_POINTS = {
    "console_scripts": ["wcurve = wcurve.cli:main"],
}
