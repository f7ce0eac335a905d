import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "mvdsp_workbench.settings")
django.setup()
