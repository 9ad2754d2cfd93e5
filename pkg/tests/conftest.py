from hypothesis import settings

settings.register_profile("shearcount", deadline=None, max_examples=60)
settings.load_profile("shearcount")
