from django.apps import AppConfig


class LogicalConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.logical"
