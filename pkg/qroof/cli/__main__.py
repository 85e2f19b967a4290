from .cli import qroof


def main():
    qroof()


if __name__ == "__main__":
    main()
