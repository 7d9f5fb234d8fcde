import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'branchq_project.settings')
django.setup()
