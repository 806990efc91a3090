from django.apps import AppConfig


class TomoConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "apps.tomo"
