from typing import Literal


class Printr(object):
    _instance = None

    BLUE = "\033[94m"
    CYAN = "\033[96m"
    GREEN = "\033[92m"
    YELLOW = "\033[93m"
    RED = "\033[91m"
    CLEAR = "\033[0m"
    BOLD = "\033[1m"
    NORMAL_WEIGHT = "\033[22m"

    BOX_WIDTH = 72

    CHANNEL = Literal["main", "error", "warning", "info"]
    OUTPUT_TYPES = None | list

    CHANNEL_COLORS: dict[CHANNEL, str] = dict(
        main="", error=RED, warning=YELLOW, info=BLUE
    )

    _message_stacks: dict[CHANNEL, list] = dict(main=[], error=[], warning=[], info=[])

    # NOTE this is a singleton class
    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(Printr, cls).__new__(cls)

            cls.out: dict[Printr.CHANNEL, Printr.OUTPUT_TYPES] = dict(
                main=None, error=None, warning=None, info=None
            )
            cls.colored = True
        return cls._instance

    def set_output(self, output_channel: CHANNEL, output_element: OUTPUT_TYPES):
        """Redirects a channel into a list sink (or back to the terminal with None).

        Messages that were held back for this channel are flushed into the new sink.
        """
        self.out[output_channel] = output_element

        msg_stack = self._message_stacks.get(output_channel, [])
        if len(msg_stack) > 0:
            msg = "\n".join(msg_stack)
            msg_stack.clear()
            self.print(msg, output_channel)

    def print(self, text, output_channel: CHANNEL = "main", hold=False):
        sink = self.out.get(output_channel, None)
        if sink is not None:
            sink.append(str(text))
        elif hold:
            # kept until a sink for this channel is attached
            self._message_stacks.get(output_channel, []).append(str(text))
        else:
            color = self.CHANNEL_COLORS.get(output_channel, "")
            if color and self.colored:
                print(Printr.clr(text, color))
            else:
                print(text)

    def print_err(self, text, hold=False):
        self.print(text, output_channel="error", hold=hold)

    def print_warn(self, text, hold=False):
        self.print(text, output_channel="warning", hold=hold)

    def print_info(self, text, hold=False):
        self.print(text, output_channel="info", hold=hold)

    @staticmethod
    def clr(text, color_format):
        return f"{color_format}{text}{Printr.CLEAR}"

    # the box helpers honour channel redirection so reports can be captured

    def box_start(self, title: str = ""):
        bar = "─" * Printr.BOX_WIDTH
        self.print(f"{Printr.CYAN}⎡{bar}⎤{Printr.CLEAR}" if self.colored else f"⎡{bar}⎤")
        if title:
            self.box_print(f"{Printr.BOLD}{title}{Printr.NORMAL_WEIGHT}" if self.colored else title)

    def box_end(self):
        bar = "─" * Printr.BOX_WIDTH
        self.print(f"{Printr.CYAN}⎣{bar}⎦{Printr.CLEAR}" if self.colored else f"⎣{bar}⎦")

    def box_print(self, text):
        if self.colored:
            self.print(f"{Printr.CYAN}⎜{Printr.CLEAR}  {text}")
        else:
            self.print(f"⎜  {text}")
