# -*- coding: utf-8 -*-

from hypothesis import settings

settings.register_profile("invariantsplit", deadline=None, max_examples=100)
settings.load_profile("invariantsplit")
