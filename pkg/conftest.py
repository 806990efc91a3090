import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "mode_cnot.settings")
django.setup()
