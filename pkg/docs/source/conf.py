# Configuration file for the Sphinx documentation builder.
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys

sys.path.insert(0, os.path.abspath('../../src'))


# -- Project information -----------------------------------------------------

project = 'rough-billiards'
copyright = '2024, rough-billiards developers'
author = 'rough-billiards developers'


# -- General configuration ---------------------------------------------------

extensions = [
    "recommonmark",
    "sphinx_markdown_tables",
    "sphinx.ext.napoleon",
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.doctest",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
]

templates_path = ['_templates']
exclude_patterns = []
autodoc_mock_imports = ["transformers"]


# -- Options for HTML output -------------------------------------------------

html_theme = "pydata_sphinx_theme"
html_static_path = []
