"""Calendar arithmetic shared by the rating model and the inventory."""

from __future__ import annotations

import datetime as dt

ISO_DATE = "%Y-%m-%d"


def add_years(day: dt.date, years: int = 1) -> dt.date:
    """Step a date forward a whole number of calendar years.

    Month and day are preserved; Feb 29 maps to Feb 28 when the target
    year is not a leap year.
    """
    try:
        return day.replace(year=day.year + years)
    except ValueError:
        return day.replace(year=day.year + years, day=28)


def parse_date(text: str) -> dt.date:
    """Parse a YYYY-MM-DD string, the only date syntax used on the wire."""
    return dt.datetime.strptime(text, ISO_DATE).date()
