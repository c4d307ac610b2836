#!/usr/bin/env python

"""
Command-line entry point: ``./manage.py qed <subcommand>`` and the usual Django utilities.
"""

import os
import sys

if __name__ == "__main__":
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "coulombqed.settings.local")

    from django.core.management import execute_from_command_line

    execute_from_command_line(sys.argv)
