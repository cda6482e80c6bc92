from django.urls import path
from .api import *

urlpatterns = [
    path('execute', ExecuteAPI.as_view(), name='execute'),
    path('reward', RewardAPI.as_view(), name='reward'),
    path('vote', VoteAPI.as_view(), name='vote'),
]
