import os
import sys
import datetime

# Modules documented with autodoc live one directory up.
sys.path.insert(0, os.path.abspath('..'))

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.mathjax']

# How to sort documented members
autodoc_member_order = 'bysource'

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

# General information about the project.
project = 'Python-PSDMF'
project_copyright = f'{datetime.date.today().year}, Python-PSDMF developers'

exec(open(os.path.join('..', 'psdmflib', 'version.py')).read())
version = release = globals()['__version__']

exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'alabaster'
html_theme_options = {
    'show_powered_by': 'false',
    'page_width': '1008px',
}
html_sidebars = {
    '**': ['about.html', 'navigation.html', 'searchbox.html']
}
html_use_index = False
html_domain_indices = False
html_copy_source = False
html_show_sourcelink = False
htmlhelp_basename = 'PythonPsdmfdoc'
nitpick_ignore_regex = [(r'py:class', r'.*')]
