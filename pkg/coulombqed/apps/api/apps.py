""" AppConfig for API app. """

from django.apps import AppConfig


class ApiConfig(AppConfig):
    name = 'coulombqed.apps.api'
    label = 'coulombqed_apps_api'
    verbose_name = "Coulomb QED API"
