from typing import Dict, Optional

import pandas as pd


def render_table(table: pd.DataFrame, output: str = None) -> None:
    """
    prints a table to the user
    :param table: the table to print
    :param output: a title printed above the table
    :return: None
    """
    if output:
        print(output)
    print(table.to_string())
    print()


def series_table(values: Dict[str, object], column: str) -> pd.DataFrame:
    """
    one column table of scalar results, floats rounded for reading
    """
    table = pd.Series(values, dtype=object).to_frame(column)
    return table.apply(lambda col: col.map(_round))


def ladder_table(ladder: Dict[str, Dict[str, float]], orders: Optional[list] = None) -> pd.DataFrame:
    """
    rows per rung of a refinement ladder with the observed order reaching that rung
    """
    table = pd.DataFrame.from_dict(ladder, orient='index')
    table.index.name = 'n_r'
    if orders is not None:
        table['order'] = [None] + list(orders)
    return table


def _round(value):
    if isinstance(value, float):
        return float(f'{value:.6g}')
    return value
