class CmcError(Exception):
    """
    Base class for all exceptions raised by cmcopula.
    """
