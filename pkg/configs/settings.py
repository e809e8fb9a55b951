#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
TaxoClean configuration.

All values come from ``TAXOCLEAN_*`` environment variables (a ``.env`` file
is honoured); command-line flags override them.
"""

import os
from typing import Dict, Any
from dotenv import load_dotenv

load_dotenv()


def _flag(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ('1', 'true', 'yes', 'on')


class Config:
    """Application configuration"""

    PROJECT_NAME = "TaxoClean"
    VERSION = "0.1.0"

    LOGGING = {
        'level': os.getenv('TAXOCLEAN_LOG_LEVEL', 'WARNING').upper(),
        # empty string: no file sink
        'file': os.getenv('TAXOCLEAN_LOG_FILE', ''),
        'max_bytes': int(os.getenv('TAXOCLEAN_LOG_MAX_BYTES', 10 * 1024 * 1024)),  # 10MB
        'backup_count': int(os.getenv('TAXOCLEAN_LOG_BACKUP_COUNT', 5)),
        'format': os.getenv('TAXOCLEAN_LOG_FORMAT', '{time:YYYY-MM-DD HH:mm:ss} | {level} | {name} | {message}'),
    }

    INPUT = {
        'format': os.getenv('TAXOCLEAN_INPUT_FORMAT', 'native').lower(),
        'encoding': os.getenv('TAXOCLEAN_ENCODING', 'utf-8'),
    }

    REPORT = {
        'format': os.getenv('TAXOCLEAN_REPORT_FORMAT', 'text').lower(),
    }

    CHECKS = {
        'keep_unknown_rigidity': _flag('TAXOCLEAN_KEEP_UNKNOWN_RIGIDITY', 'true'),
        'strict': _flag('TAXOCLEAN_STRICT', 'false'),
    }

    @classmethod
    def as_defaults(cls) -> Dict[str, Any]:
        """Defaults for the command-line parser."""
        return {
            'input_format': cls.INPUT['format'],
            'encoding': cls.INPUT['encoding'],
            'report_format': cls.REPORT['format'],
            'keep_unknown_rigidity': cls.CHECKS['keep_unknown_rigidity'],
            'strict': cls.CHECKS['strict'],
        }

    @classmethod
    def validate_config(cls) -> bool:
        """Check enumerated values; raises ``ValueError`` on the first bad one."""
        if cls.INPUT['format'] not in ['native', 'prolog']:
            raise ValueError(f"Invalid input format: {cls.INPUT['format']}")

        if cls.REPORT['format'] not in ['text', 'jsonl']:
            raise ValueError(f"Invalid report format: {cls.REPORT['format']}")

        if cls.LOGGING['level'] not in ['TRACE', 'DEBUG', 'INFO', 'SUCCESS', 'WARNING', 'ERROR', 'CRITICAL']:
            raise ValueError(f"Invalid log level: {cls.LOGGING['level']}")

        if cls.LOGGING['max_bytes'] <= 0 or cls.LOGGING['backup_count'] < 0:
            raise ValueError("log rotation settings must be positive")

        return True


class DevelopmentConfig(Config):
    """Development settings"""
    LOGGING = {
        **Config.LOGGING,
        'level': 'DEBUG'
    }


class ProductionConfig(Config):
    """CI / batch settings"""
    CHECKS = {
        **Config.CHECKS,
        'strict': True
    }


class TestingConfig(Config):
    """Test settings"""
    TESTING = True
    LOGGING = {
        **Config.LOGGING,
        'file': ''
    }


config_map = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': Config
}


def get_config(config_name: str = None) -> Config:
    """Configuration instance for ``config_name`` (default: ``TAXOCLEAN_ENV``)."""
    if config_name is None:
        config_name = os.getenv('TAXOCLEAN_ENV', 'default')

    config_class = config_map.get(config_name, config_map['default'])
    return config_class()
