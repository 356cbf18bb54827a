from services.printr import Printr


def test_held_messages_flush_into_the_next_sink():
    printr = Printr()
    printr.print_warn("first", hold=True)
    printr.print_warn("second", hold=True)
    sink = []
    try:
        printr.set_output("warning", sink)
        printr.print_warn("third")
    finally:
        printr.set_output("warning", None)
    assert sink == ["first\nsecond", "third"]


def test_boxes_without_color(captured):
    printr = Printr()
    printr.colored = False
    try:
        printr.box_start("title")
        printr.box_print("body")
        printr.box_end()
    finally:
        printr.colored = True
    assert captured["main"] == [f"⎡{'─' * Printr.BOX_WIDTH}⎤", "⎜  title", "⎜  body", f"⎣{'─' * Printr.BOX_WIDTH}⎦"]
