from .exceptions import UnsupportedKindError
from .pool import EMPLOYED, UNEMPLOYED, PoolModel, PremiumEntry, PremiumQuote
from .pricing import discounted_field, price, price_closed_form

__all__ = [
    "EMPLOYED",
    "UNEMPLOYED",
    "PoolModel",
    "PremiumEntry",
    "PremiumQuote",
    "UnsupportedKindError",
    "discounted_field",
    "price",
    "price_closed_form",
]
