""" AppConfig for the resources app. """

from django.apps import AppConfig


class ResourcesConfig(AppConfig):
    name = 'coulombqed.apps.resources'
    verbose_name = "Resource Estimates"
