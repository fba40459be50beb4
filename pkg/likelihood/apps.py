from django.apps import AppConfig


class LikelihoodConfig(AppConfig):
    name = "likelihood"
    verbose_name = "Likelihood orders on S_n"
