import functools
from typing import Any

from Core.Utils.exception import KernelError
from Core.Utils.logger import Logger

logger = Logger.get_logger()


def exception_handler(show_ui: bool = True, default: Any = None):
    """
    Decorator for global exception handling on the outer surfaces.
    - Logs all errors.
    - Optionally shows Streamlit error message.
    - Returns `default` instead of raising.
    """

    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)

            except KernelError as e:
                logger.error("Kernel Error in %s: %s", func.__name__, e.message)
                if show_ui:
                    import streamlit as st

                    st.error(f"⚠️ {e.message}")

            except Exception as e:
                logger.exception("Unexpected Error in %s: %s", func.__name__, str(e))
                if show_ui:
                    import streamlit as st

                    st.error("❌ Something went wrong. Please try again.")

            return default

        return wrapper

    return decorator
