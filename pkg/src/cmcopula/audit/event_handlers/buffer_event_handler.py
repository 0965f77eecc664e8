from io import StringIO

from rich.console import Console

from cmcopula.audit.event_handlers.cli_event_handler import CLIEventHandler


class BufferEventHandler(CLIEventHandler):
    """
    This handler writes the same report as `CLIEventHandler` into an in-memory buffer.

    ### Usage

    ```python
        import cmcopula
        from cmcopula.audit import BufferEventHandler

        handler = BufferEventHandler()
        cmcopula.event_handlers = [handler]
        cmcopula.simulate(model, n_paths=1000, seed=7)
        print(handler.buffer.getvalue())
    ```
    """

    def __init__(self) -> None:
        super().__init__()

        self.buffer = StringIO()
        self._console = Console(file=self.buffer, record=True, highlight=False, width=120)
