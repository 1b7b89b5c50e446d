from .settings import VERSION, Settings, ZeroTestConfig, get_settings

__all__ = [
    'VERSION',
    'Settings',
    'ZeroTestConfig',
    'get_settings'
]
