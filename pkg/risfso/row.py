from collections.abc import Sequence


class Row(Sequence):
    """One report row: ordered column names with their values.

    Columns are also reachable as attributes and by name.
    """

    def __init__(self, names, values):
        self._names = tuple(names)
        self._values = tuple(values)

        if len(self._names) != len(self._values):
            raise ValueError(
                f"row has {len(self._names)} columns but "
                f"{len(self._values)} values"
            )

        for name, value in zip(self._names, self._values):
            setattr(self, name, value)

    @classmethod
    def from_dict(cls, names, data):
        """Row over ``names`` taking values from ``data``; missing -> None."""
        return cls(names, [data.get(name) for name in names])

    @property
    def names(self):
        return self._names

    def __getitem__(self, key):
        if isinstance(key, str):
            try:
                return self._values[self._names.index(key)]
            except ValueError:
                raise KeyError(f"column '{key}' not found in row")
        if isinstance(key, (int, slice)):
            return self._values[key]
        raise TypeError(
            f"row indices must be integers, slices or column names, "
            f"not {type(key).__name__}"
        )

    def __len__(self):
        return len(self._values)

    def __repr__(self):
        cells = ", ".join(
            f"{n}={v!r}" for n, v in zip(self._names, self._values)
        )
        return f"Row({cells})"

    def __eq__(self, other):
        if isinstance(other, Row):
            return self.as_dict() == other.as_dict()
        if isinstance(other, dict):
            return self.as_dict() == other
        if isinstance(other, (list, tuple)):
            return self._values == tuple(other)
        return NotImplemented

    __hash__ = None

    def as_dict(self):
        return dict(zip(self._names, self._values))

    def replace(self, **changes):
        data = self.as_dict()
        unknown = set(changes) - set(data)
        if unknown:
            raise KeyError(f"unknown columns {sorted(unknown)}")
        data.update(changes)
        return Row.from_dict(self._names, data)


__all__ = ["Row"]
