# command_bus.py
import logging

from errors import CommandError, GrossError


class CommandBus:
    """The command bus is the single dispatch point between the front ends (one-shot, REPL, batch) and the driver"""
    def __init__(self):
        # Each verb is routed to exactly one handler function
        self.handlers = {}

    def subscribe(self, verb, handler):
        if verb in self.handlers:
            logging.warning("[CommandBus] Replacing handler for '%s'", verb)
        self.handlers[verb] = handler

    def verbs(self) -> list:
        return sorted(self.handlers)

    def publish(self, verb, command=None):
        """Pass the command to the handler subscribed to its verb and return the result"""
        handler = self.handlers.get(verb)
        if handler is None:
            raise CommandError(f"unknown verb '{verb}'")

        logging.debug("[CommandBus] Dispatching %s", verb)
        try:
            return handler(command)
        except GrossError as e:
            # Domain errors go back to the caller, which owns the exit code
            logging.info("[CommandBus] %s failed: %s: %s", verb, e.code, e)
            raise
