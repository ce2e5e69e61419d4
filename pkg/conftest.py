import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "greencache.settings.test")
django.setup()
