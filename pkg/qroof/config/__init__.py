from .config_mgt import AppConfigSource, env_var_name
from .module_config import ModuleConfig

__all__ = ["AppConfigSource", "ModuleConfig", "env_var_name"]
