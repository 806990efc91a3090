from django.apps import AppConfig


class ModeCoreConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.mode_core"
