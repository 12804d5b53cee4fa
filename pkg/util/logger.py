import logging
import os
import sys

LOGGER_NAME = 'triwalk'
LOG_FORMAT = '%(asctime)s - %(name)s - %(message)s'


def setup_logger(log_filename=None, log_directory='logs', level=logging.DEBUG, echo=False):
    """ File logger for a run; `echo` mirrors INFO lines on stderr """
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(level)
    logger.propagate = False

    if logger.handlers:
        logger.handlers = []  # clear existing handlers

    formatter = logging.Formatter(LOG_FORMAT)
    if log_filename:
        if not os.path.exists(log_directory):
            os.makedirs(log_directory)
        file_handler = logging.FileHandler(os.path.join(log_directory, log_filename))
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
    if echo:
        stream_handler = logging.StreamHandler(sys.stderr)
        stream_handler.setLevel(logging.INFO)
        stream_handler.setFormatter(logging.Formatter('%(name)s: %(message)s'))
        logger.addHandler(stream_handler)
    if not logger.handlers:
        logger.addHandler(logging.NullHandler())
    return logger


def stage_logger(logger, stage):
    """ Child logger for one pipeline stage (search, verify, ...) """
    if isinstance(logger, logging.Logger):
        return logger.getChild(stage)
    return logger


class DummyLogger:
    def debug(self, msg, *args, **kwargs): pass
    def info(self, msg, *args, **kwargs): pass
    def warning(self, msg, *args, **kwargs): pass
    def error(self, msg, *args, **kwargs): pass
    def critical(self, msg, *args, **kwargs): pass
