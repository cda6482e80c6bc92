"""Configure Django before pytest collects the app's Django test cases."""
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'server.settings')
django.setup()
