"""Configure Django for pytest (the suite is written for manage.py test)."""
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'cubicl_project.settings')
django.setup()
