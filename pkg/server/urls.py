"""server URL Configuration

The reward environment is served under /api/: execute, reward and vote.
"""
from django.urls import path, include

urlpatterns = [
    path('api/', include('app.api_views.urls')),
]
