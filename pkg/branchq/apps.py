from django.apps import AppConfig


class BranchqConfig(AppConfig):
    name = 'branchq'
    verbose_name = 'q-analogues of branching coefficients'
