"""
URL configuration for likelihood app.

The `urlpatterns` list routes URLs to views. For more information please see:
    https://docs.djangoproject.com/en/5.1/topics/http/urls/
"""

from django.urls import path

from .views import (
    CharacterTableView,
    CharPolynomialView,
    DetectorView,
    DistanceView,
    DistributionView,
    OrderView,
    SplitView,
)

urlpatterns = [
    path("characters/", CharacterTableView.as_view(), name="characters"),
    path("distribution/", DistributionView.as_view(), name="distribution"),
    path("order/", OrderView.as_view(), name="order"),
    path("distances/", DistanceView.as_view(), name="distances"),
    path("split/", SplitView.as_view(), name="split"),
    path("detectors/", DetectorView.as_view(), name="detectors"),
    path("charpoly/", CharPolynomialView.as_view(), name="charpoly"),
]
