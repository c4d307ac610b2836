""" AppConfig for the encoding app. """

from django.apps import AppConfig


class EncodingConfig(AppConfig):
    name = 'coulombqed.apps.encoding'
    verbose_name = "Qubit Encodings"
